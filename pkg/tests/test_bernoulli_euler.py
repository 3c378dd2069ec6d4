import json
from fractions import Fraction

import mpmath
import pytest

from shefferzeta.bernoulli_euler import (
    BERNOULLI_VARIANTS,
    EULER_VARIANTS,
    ZETA_VARIANTS,
    ZetaComb,
    bernoulli_via_moment,
    euler_via,
    odd_bernoulli_tau_poly,
    odd_zeta_bracket,
    primes_upto,
    sinh_moment,
    staudt_clausen_check,
    verify_odd_zeta_identity,
    verify_theorem4,
    zeta_even_ratio,
)
from shefferzeta.classical import bernoulli_number, bernoulli_poly, bernoulli_table, euler_number, euler_table
from shefferzeta.exact import Poly, binomial
from shefferzeta.sheffer import gen_q


def frac(v):
    return Fraction(v)


# ---- classical numbers against sympy


def test_bernoulli_examples():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(3) == 0
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(12) == Fraction(-691, 2730)


def test_bernoulli_against_sympy():
    sympy = pytest.importorskip("sympy")
    for n in range(2, 81):
        b = sympy.bernoulli(n)
        assert frac(bernoulli_number(n)) == Fraction(int(b.p), int(b.q)), n
    assert bernoulli_table(4) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_euler_against_sympy():
    sympy = pytest.importorskip("sympy")
    for n in range(0, 81):
        assert euler_number(n) == int(sympy.euler(n)), n
    assert euler_table(6) == [1, 0, -1, 0, 5, 0, -61]
    assert euler_number(8) == 1385


def test_bernoulli_sign_pattern():
    for n in range(1, 41):
        assert (-1) ** (n - 1) * bernoulli_number(2 * n) > 0


def test_bernoulli_poly_examples():
    assert bernoulli_poly(2) == Poly([Fraction(1, 6), -1, 1])
    assert bernoulli_poly(4) == Poly([Fraction(-1, 30), 0, 1, -2, 1])
    assert bernoulli_poly(3)(Fraction(1, 2)) == 0


def test_bernoulli_poly_identities():
    for n in range(1, 21):
        b = bernoulli_poly(n)
        assert b.derivative() == bernoulli_poly(n - 1) * n
        assert b.compose(Poly([1, 1])) - b == Poly.monomial(n - 1, n)
        assert b.compose(Poly([1, -1])) == b * (-1) ** n
        two = b.compose(Poly([0, 2]))
        half = b.compose(Poly([Fraction(1, 2), 1]))
        assert two == (b + half) * Fraction(2 ** (n - 1))
        # addition formula at a sample shift y
        y = Fraction(2, 7)
        shifted = sum((bernoulli_poly(k) * (binomial(n, k) * y ** (n - k)) for k in range(n + 1)), Poly())
        assert b.compose(Poly([y, 1])) == shifted


# ---- moment-based routes


def test_variant_examples():
    assert bernoulli_via_moment(1, "eq2_13") == Fraction(1, 6)
    assert bernoulli_via_moment(2, "eq2_13") == Fraction(-1, 30)
    assert bernoulli_via_moment(1, "thm1") == Fraction(1, 6)
    assert euler_via(1, "moment_2_20") == -1
    assert euler_via(2, "q_at_0") == 5
    assert euler_via(1, "thm2") == -1
    assert zeta_even_ratio(1) == Fraction(1, 6)
    assert zeta_even_ratio(2) == Fraction(1, 90)
    assert zeta_even_ratio(1, "corollary1") == Fraction(1, 6)


def test_all_variants_agree_to_40():
    for n in range(1, 41):
        target = bernoulli_number(2 * n)
        for v in BERNOULLI_VARIANTS:
            assert bernoulli_via_moment(n, v) == target, (n, v)
        for v in ZETA_VARIANTS:
            assert zeta_even_ratio(n, v) == zeta_even_ratio(n), (n, v)
    for n in range(0, 41):
        for v in EULER_VARIANTS:
            if v == "thm2" and n == 0:
                continue
            assert euler_via(n, v) == euler_number(2 * n), (n, v)


def test_variant_errors():
    with pytest.raises(ValueError):
        bernoulli_via_moment(0)
    with pytest.raises(ValueError):
        bernoulli_via_moment(1, "nope")
    with pytest.raises(ValueError):
        euler_via(0, "thm2")
    with pytest.raises(ValueError):
        zeta_even_ratio(0)


def test_zeta_even_ratio_numeric():
    mpmath.mp.dps = 30
    for n in range(1, 8):
        r = frac(zeta_even_ratio(n))
        assert abs(mpmath.zeta(2 * n) / mpmath.pi ** (2 * n) - mpmath.mpf(r.numerator) / r.denominator) < 1e-25


def test_q_second_derivative():
    for n in range(1, 30):
        assert gen_q(n).derivative(2)(0) == euler_number(2 * n) + 1


# ---- integrality


@pytest.mark.parametrize("n", [1, 3, 7])
def test_staudt_clausen_examples(n):
    assert staudt_clausen_check(n).ok


def test_staudt_clausen_sweep():
    for n in range(1, 41):
        r = staudt_clausen_check(n)
        assert r.integrality_2_43 and r.integrality_2_44 and r.fractional_part_ok, n
    assert bernoulli_number(14) == Fraction(7, 6)


def test_primes():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


# ---- ZetaComb and the sinh moments


def test_zetacomb_algebra_and_json():
    a = ZetaComb({0: Fraction(7, 2)}, 1)
    b = ZetaComb({0: Fraction(-7, 2), 1: 3})
    assert (a + b) == ZetaComb({1: 3}, 1)
    assert (a - a).is_zero()
    assert a * 2 == ZetaComb({0: 7}, 2)
    data = json.loads((a + b).dumps())
    assert data == {"const": "1", "zeta": {"5": "3"}}
    assert ZetaComb.from_json(data) == a + b
    with pytest.raises(ValueError):
        ZetaComb.from_json({"zeta": {"4": "1"}})
    assert ZetaComb({2: 0}).coeffs == {}


def test_sinh_moment_symbolic():
    assert sinh_moment(3) == ZetaComb({0: Fraction(7, 2)})
    assert sinh_moment(2) == Fraction(1, 4)
    assert sinh_moment(5) == ZetaComb({1: Fraction(93, 2)})
    with pytest.raises(ValueError):
        sinh_moment(1)


@pytest.mark.parametrize("alpha", [2, 3, 4, 5, 7])
def test_sinh_moment_against_quadrature(alpha):
    mpmath.mp.dps = 30
    num = mpmath.quad(lambda t: t ** (alpha - 1) / mpmath.sinh(mpmath.pi * t), [0, mpmath.inf])
    val = sinh_moment(alpha)
    if isinstance(val, ZetaComb):
        (m, c), = val.coeffs.items()
        exact = mpmath.mpf(c.numerator) / c.denominator * mpmath.zeta(2 * m + 3) / mpmath.pi ** (2 * m + 3)
    else:
        exact = mpmath.mpf(Fraction(val).numerator) / Fraction(val).denominator
    assert abs(num - exact) < 1e-20 * abs(exact)


def test_odd_bernoulli_tau_poly():
    assert odd_bernoulli_tau_poly(0) == Poly([0, Fraction(1, 2)])
    assert odd_bernoulli_tau_poly(1) == Poly([0, Fraction(-1, 8), Fraction(-1, 8)])
    mpmath.mp.dps = 30
    for k in range(6):
        r = odd_bernoulli_tau_poly(k)
        assert r(0) == 0
        b = bernoulli_poly(2 * k + 1)
        for tau in (mpmath.mpf("0.3"), mpmath.mpf(2)):
            z = (1 - 1j * tau) / 2
            direct = 1j * tau * sum(mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator * z**j
                                    for j, c in enumerate(b.coeffs))
            approx = sum(mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator * tau ** (2 * j)
                         for j, c in enumerate(r.coeffs))
            assert abs(direct.imag) < 1e-20
            assert abs(direct.real - approx) < 1e-20 * max(1, abs(approx))


def test_odd_zeta_identity():
    r0 = verify_odd_zeta_identity(0)
    assert r0.lhs == ZetaComb({0: Fraction(7, 4)})
    assert r0.ok
    r1 = verify_odd_zeta_identity(1)
    assert r1.ok and len(r1.brackets) == 1
    for n in range(2, 9):
        assert verify_odd_zeta_identity(n).ok
    assert odd_zeta_bracket(1) == 0


def test_odd_bernoulli_sum_vanishes():
    assert verify_theorem4(1)
    assert verify_theorem4(2)
    assert all(verify_theorem4(n) for n in range(1, 41))
    with pytest.raises(ValueError):
        verify_theorem4(0)

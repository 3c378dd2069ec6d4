import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shefferzeta.exact import (
    X,
    Biseries,
    Poly,
    binomial,
    biseries_div,
    biseries_exp,
    biseries_mul,
    double_factorial_odd,
    exp_moment,
    exp_moment_div_x,
    format_rational,
    parse_rational,
    poly_arith,
    poly_derivative,
    poly_eval,
)

small_ints = st.integers(min_value=-20, max_value=20)
fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def polys(max_deg=5, zero_const=False):
    return st.lists(fractions, min_size=0, max_size=max_deg + 1).map(
        lambda c: Poly(([0] + c[1:]) if zero_const and c else c)
    )


# ---- binomial / double factorial


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (7, 4, 35), (5, 9, 0), (5, -1, 0), (0, 0, 1)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@given(st.integers(min_value=1, max_value=120), st.integers(min_value=-3, max_value=125))
def test_pascal_rule(n, k):
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


@pytest.mark.parametrize("n,expected", [(1, 1), (3, 15), (4, 105)])
def test_double_factorial_odd(n, expected):
    assert double_factorial_odd(n) == expected


@pytest.mark.parametrize("n", [0, -2])
def test_double_factorial_rejects(n):
    with pytest.raises(ValueError):
        double_factorial_odd(n)


# ---- polynomials


def test_poly_spec_examples():
    p2 = Poly([0, -1, 3])
    assert poly_arith(p2, Poly([0, -1]), "mul") == Poly([0, 0, 1, -3])
    assert poly_derivative(Poly([0, -1, 15, -15])) == Poly([-1, 30, -45])
    assert poly_eval(p2, 0) == 0


def test_poly_canonical_form():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([0, 0]).degree == -1
    assert Poly([Fraction(4, 2)]).coeffs == (2,)
    assert isinstance(Poly([Fraction(4, 2)]).coeffs[0], int)
    with pytest.raises(AttributeError):
        Poly([1]).coeffs = (2,)


def test_poly_pretty():
    assert Poly([0, -1, 3]).pretty() == "3x^2 - x"
    assert Poly([-1, -1]).pretty() == "-x - 1"
    assert Poly([0]).pretty() == "0"
    assert Poly([1]).pretty() == "1"
    assert Poly([-61, -61, -30, -15]).pretty() == "-15x^3 - 30x^2 - 61x - 61"


def test_poly_arith_ops():
    a = Poly([1, 2])
    b = Poly([0, 1, 1])
    assert a + b == Poly([1, 3, 1])
    assert a - b == Poly([1, 1, -1])
    assert a * b == Poly([0, 1, 3, 2])
    assert poly_arith(a, b, "sub") == a - b
    assert (a / 2) == Poly([Fraction(1, 2), 1])
    assert a**3 == a * a * a
    assert a.compose(b) == Poly([1, 2, 2])
    with pytest.raises(ValueError):
        poly_arith(a, b, "div")


def test_poly_antiderivative_roundtrip():
    p = Poly([3, Fraction(1, 2), -7])
    assert p.antiderivative(5).derivative() == p
    assert p.antiderivative(5)(0) == 5


def test_poly_json_roundtrip():
    p = Poly([Fraction(-1, 3), 0, 7])
    s = p.dumps()
    assert json.loads(s) == ["-1/3", "0", "7"]
    assert Poly.from_json(json.loads(s)) == p


@given(polys())
def test_poly_json_roundtrip_random(p):
    assert Poly.from_json(json.loads(p.dumps())) == p


def test_rational_format():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 30)) == "-1/30"
    assert parse_rational("-1/30") == Fraction(-1, 30)
    assert parse_rational("5") == 5


@settings(max_examples=60)
@given(polys(), fractions)
def test_derivative_matches_finite_difference(p, x0):
    h = Fraction(1, 2**20)
    fd = (p(x0 + h) - p(x0)) / h
    exact = poly_derivative(p)(x0)
    # forward difference error is h * max|p''|/2 on [x0, x0+h]
    bound = h * sum(abs(c) * k * (k - 1) * (abs(x0) + 1) ** max(k - 2, 0) for k, c in enumerate(p.coeffs)) + h
    assert abs(Fraction(fd) - Fraction(exact)) <= bound


# ---- moments


@pytest.mark.parametrize(
    "coeffs,c,expected",
    [([0, -1], 2, Fraction(-1, 2)), ([0, -1, 3], 2, Fraction(1, 4)), ([0, -1, 3], 1, 2)],
)
def test_exp_moment_div_x_examples(coeffs, c, expected):
    assert exp_moment_div_x(Poly(coeffs), c) == expected


@pytest.mark.parametrize("coeffs,expected", [([0, -1], -1), ([0, -1, 3], 5), ([], 0)])
def test_exp_moment_examples(coeffs, expected):
    assert exp_moment(Poly(coeffs), 1) == expected


def test_moment_rejections():
    with pytest.raises(ValueError):
        exp_moment_div_x(Poly([1, 1]), 2)
    with pytest.raises(ValueError):
        exp_moment_div_x(Poly([0, 1]), 0)
    with pytest.raises(ValueError):
        exp_moment(Poly([1]), -1)


def test_exp_moment_matches_quadrature():
    mpmath = pytest.importorskip("mpmath")
    p = Poly([2, -3, Fraction(1, 2), 4])
    c = Fraction(3, 2)
    num = mpmath.quad(lambda x: mpmath.exp(-c.numerator * x / c.denominator) * (2 - 3 * x + x**2 / 2 + 4 * x**3), [0, mpmath.inf])
    assert abs(num - mpmath.mpf(exp_moment(p, c).numerator) / exp_moment(p, c).denominator) < 1e-12


@settings(max_examples=50)
@given(polys(4, zero_const=True), polys(4, zero_const=True), polys(4), fractions, fractions)
def test_moment_div_x_bilinear(p, q, r, a, b):
    # linear in the first factor of a product, the second factor held fixed
    left = exp_moment_div_x((p * a + q * b) * r, 2)
    right = a * exp_moment_div_x(p * r, 2) + b * exp_moment_div_x(q * r, 2)
    assert left == right
    # and symmetric in the two factors
    assert exp_moment_div_x(p * r, 2) == exp_moment_div_x(r * p, 2)


# ---- biseries


def test_biseries_spec_examples():
    u = Biseries([0, -X], 1)
    assert biseries_exp(u) == Biseries([1, -X], 1)
    a = Biseries([1, -X], 1)
    assert biseries_mul(a, a) == Biseries([1, -2 * X], 1)
    assert biseries_div(Biseries([1, 0], 1), Biseries([1, Fraction(1, 2)], 1)) == Biseries([1, Fraction(-1, 2)], 1)


def test_biseries_rejections():
    with pytest.raises(ValueError):
        biseries_exp(Biseries([1, X], 1))
    with pytest.raises(ValueError):
        biseries_div(Biseries.one(2), Biseries([0, 1], 2))
    with pytest.raises(ValueError):
        biseries_div(Biseries.one(2), Biseries([X, 1], 2))


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(2), min_size=3, max_size=3))
def test_exp_u_times_exp_minus_u_is_one(terms):
    u = Biseries([Poly()] + terms, 3)
    prod = biseries_mul(biseries_exp(u), biseries_exp(-u))
    assert prod == Biseries.one(3)


def test_biseries_exp_matches_power_sum():
    # exp(u) = sum u^j/j! truncated, for a u with a t^2 and a t^4 term
    u = Biseries([0, X, Poly([1, 0, -2])], 4)
    direct = Biseries.one(4)
    power = Biseries.one(4)
    fact = 1
    for j in range(1, 5):
        power = power * u
        fact *= j
        direct = direct + power * Fraction(1, fact)
    assert biseries_exp(u) == direct

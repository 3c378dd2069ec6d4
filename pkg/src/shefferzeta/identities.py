"""Registry of exactly verifiable identities, each swept over a range of n.

A check maps one index n to a verdict.  Polynomial identities compare
coefficient lists, scalar identities compare exact rationals, and a check
whose two sides are both empty sums is reported as ``vacuous`` rather than
``pass``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .bernoulli_euler import (
    bernoulli_via_moment,
    euler_via,
    odd_zeta_bracket,
    staudt_clausen_check,
    verify_odd_zeta_identity,
    verify_theorem4,
    zeta_even_ratio,
)
from .classical import bernoulli_number, euler_number
from .exact import (
    X,
    Biseries,
    Poly,
    Scalar,
    binomial,
    exp_moment,
    exp_moment_div_x,
    fact,
    format_rational,
    normalize,
    to_fraction,
)
from .sheffer import (
    cosh_minus_one_series,
    gen_p,
    sinh_over_t_series,
    tanh_half_over_t_series,
    tanh_over_t_series,
)

__all__ = [
    "UnknownCheckError",
    "SequenceTable",
    "IdentityCheck",
    "IdentityReport",
    "Verdict",
    "REGISTRY",
    "check_ids",
    "run_check",
    "run_all",
    "all_pass",
]

PASS, VACUOUS, FAIL = "pass", "vacuous", "fail"


class UnknownCheckError(KeyError):
    def __str__(self) -> str:
        return f"unknown check: {self.args[0]}"


class SequenceTable:
    """Source of p_n for the checks.

    Overrides replace individual p_n (mutation testing).  q_n is always derived
    from the table's own p_n via q_n = sum_k p_n^(k), so a bad p propagates.
    """

    def __init__(self, overrides: Optional[Dict[int, Poly]] = None):
        self.overrides = dict(overrides or {})
        self._q: Dict[int, Poly] = {}
        self._series: Dict[Tuple[str, int], Biseries] = {}

    def p(self, n: int) -> Poly:
        if n in self.overrides:
            return self.overrides[n]
        return gen_p(n)

    def q(self, n: int) -> Poly:
        if n not in self._q:
            acc, d = Poly(), self.p(n)
            while d:
                acc = acc + d
                d = d.derivative()
            self._q[n] = acc
        return self._q[n]

    def phi(self, order: int) -> Biseries:
        """Generating series assembled from the table, p_n/(2n)! at t^(2n)."""
        key = ("phi", order)
        if key not in self._series:
            self._series[key] = Biseries([self.p(n) / fact(2 * n) for n in range(order + 1)], order)
        return self._series[key]

    def f(self, order: int) -> Biseries:
        key = ("f", order)
        if key not in self._series:
            self._series[key] = Biseries([self.q(n) / fact(2 * n) for n in range(order + 1)], order)
        return self._series[key]


@dataclass(frozen=True)
class Verdict:
    status: str
    lhs: object = None
    rhs: object = None


def _cmp(lhs, rhs, vacuous: bool = False) -> Verdict:
    if lhs == rhs:
        return Verdict(VACUOUS if vacuous else PASS, lhs, rhs)
    return Verdict(FAIL, lhs, rhs)


def _all(pairs: Iterable[Tuple[object, object]]) -> Verdict:
    last = None
    for lhs, rhs in pairs:
        if lhs != rhs:
            return Verdict(FAIL, lhs, rhs)
        last = (lhs, rhs)
    if last is None:
        return Verdict(VACUOUS)
    return Verdict(PASS, *last)


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    min_n: int
    verifier: Callable[[SequenceTable, int], Verdict]
    description: str


@dataclass
class IdentityReport:
    id: str
    n_range: Tuple[int, int]
    verdicts: List[str] = field(default_factory=list)
    counterexample: Optional[dict] = None
    description: str = ""

    @property
    def passed(self) -> bool:
        return all(v != FAIL for v in self.verdicts)

    @property
    def skipped(self) -> bool:
        return self.n_range[1] < self.n_range[0]

    @property
    def substantive(self) -> int:
        return sum(v == PASS for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "n_range": list(self.n_range),
            "verdicts": list(self.verdicts),
            "counterexample": self.counterexample,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _ser(v) -> object:
    if v is None:
        return None
    if isinstance(v, (int, Fraction)):
        return format_rational(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, (tuple, list)):
        return [_ser(x) for x in v]
    return str(v)


# ---------------------------------------------------------------- checks


def _p_values(t: SequenceTable, n: int) -> Verdict:
    p = t.p(n)
    lhs = (p(0), p.derivative()(0), p.derivative(2)(0))
    rhs = (0, -1, 2 * (4 ** (n - 1) - 1))
    return _cmp(lhs, rhs)


def _q_values(t: SequenceTable, n: int) -> Verdict:
    q = t.q(n)
    e = euler_number(2 * n)
    return _cmp((q(0), q.derivative()(0), q.derivative(2)(0)), (e, e, e + 1))


def _eq1_13(t: SequenceTable, n: int) -> Verdict:
    p = t.p(n)
    nxt = X * X * p.derivative(2) + Poly((0, 1, -2)) * p.derivative() - X * p
    return _cmp(t.p(n + 1), nxt)


def _eq1_14(t: SequenceTable, n: int) -> Verdict:
    p = t.p(n)
    lead = (-1) ** n
    for j in range(1, 2 * n, 2):
        lead *= j
    return _cmp((p.degree, p[n]), (n, lead))


def _eq1_18(t: SequenceTable, n: int) -> Verdict:
    rhs = Poly()
    for k in range(n):
        rhs = rhs - t.p(k) * binomial(2 * n, 2 * k)
    return _cmp(t.p(n).derivative(), rhs)


def _eq1_20(t: SequenceTable, n: int) -> Verdict:
    acc = Poly()
    for k in range(n + 1):
        acc = acc + t.p(k) * binomial(2 * n + 1, 2 * k)
    return _cmp(t.p(n + 1), -acc.shift_x())


def _eq1_21(t: SequenceTable, n: int) -> Verdict:
    lhs = Poly()
    for k in range(n + 1):
        lhs = lhs + t.p(k).derivative() * binomial(2 * n + 1, 2 * k)
    rhs = Poly()
    for k in range(1, n + 1):
        rhs = rhs + t.p(k) * binomial(2 * n + 1, 2 * k - 1)
    return _cmp(lhs.shift_x(), rhs)


def _eq2_14(t: SequenceTable, n: int) -> Verdict:
    p = t.p(n)
    rhs = Fraction(2 * n, 1 - 16**n) * exp_moment_div_x(p * p, 2)
    return _cmp(bernoulli_number(4 * n), normalize(rhs))


def _eq2_15(t: SequenceTable, n: int) -> Verdict:
    # the n = m case of eq2_16: the left side carries p_2n
    p = t.p(n)
    return _cmp(exp_moment_div_x(t.p(2 * n), 2), exp_moment_div_x(p * p, 2))


def _splits(n: int):
    # (a, b) with a + b = n, both >= 0; n >= 1 so p_a p_b vanishes at 0
    return [(a, n - a) for a in range(n + 1)]


def _eq2_16(t: SequenceTable, n: int) -> Verdict:
    whole = exp_moment_div_x(t.p(n), 2)
    return _all((whole, exp_moment_div_x(t.p(a) * t.p(b), 2)) for a, b in _splits(n))


def _eq2_17(t: SequenceTable, n: int) -> Verdict:
    b2n = bernoulli_number(2 * n)
    scale = Fraction(n, 1 - 4**n)
    return _all(
        (b2n, normalize(scale * exp_moment_div_x(t.p(a) * t.p(b), 2))) for a, b in _splits(n)
    )


def _eq2_21(t: SequenceTable, n: int) -> Verdict:
    acc, d = Poly(), t.p(n)
    for _ in range(n + 1):
        acc = acc + d
        d = d.derivative()
    return _cmp(t.q(n), acc)


def _eq2_22_vs_2_28(t: SequenceTable, n: int) -> Verdict:
    # forward: q_n = sum_k E_{2(n-k)} C(2n,2k) p_k; inverse: p_n = sum_k C(2n,2k) q_k
    q_fwd = Poly()
    for k in range(n + 1):
        q_fwd = q_fwd + t.p(k) * (euler_number(2 * (n - k)) * binomial(2 * n, 2 * k))
    p_back = Poly()
    for k in range(n + 1):
        p_back = p_back + t.q(k) * binomial(2 * n, 2 * k)
    return _all([(t.q(n), q_fwd), (t.p(n), p_back)])


def _eq2_23(t: SequenceTable, n: int) -> Verdict:
    # p_n(x + y) = sum_k C(2n,2k) p_k(x) p_{n-k}(y) at deg+1 rational points y
    p = t.p(n)
    pairs = []
    for i in range(n + 1):
        y = Fraction(2 * i - n, 3)
        lhs = p.compose(Poly((y, 1)))
        rhs = Poly()
        for k in range(n + 1):
            rhs = rhs + t.p(k) * (binomial(2 * n, 2 * k) * t.p(n - k)(y))
        pairs.append((lhs, rhs))
    return _all(pairs)


def _eq2_24(t: SequenceTable, n: int) -> Verdict:
    return _cmp(t.q(n).derivative(2)(0), euler_number(2 * n) + 1)


def _eq2_29(t: SequenceTable, n: int) -> Verdict:
    rhs = Poly()
    for k in range(n):
        rhs = rhs - t.q(k) * binomial(2 * n, 2 * k)
    return _cmp(t.q(n).derivative(), rhs)


def _b_weight(k: int) -> Fraction:
    # (2^(2k) - 1) B_{2k} / k
    return Fraction(4**k - 1, k) * to_fraction(bernoulli_number(2 * k))


def _eq2_30(t: SequenceTable, n: int) -> Verdict:
    rhs = Poly()
    for k in range(1, n + 1):
        rhs = rhs + t.p(n + 1 - k) * (binomial(2 * n, 2 * k - 1) * _b_weight(k))
    return _cmp(t.p(n).derivative().shift_x(), rhs)


def _eq2_31(t: SequenceTable, n: int) -> Verdict:
    lhs = sum((binomial(2 * n, 2 * k - 1) * _b_weight(k) for k in range(1, n + 1)), Fraction(0))
    return _cmp(normalize(lhs), 1)


def _eq2_32(t: SequenceTable, n: int) -> Verdict:
    # sides obtained by integrating the eq2_30/eq1_21 combination against e^{-x},
    # with E_{2r} = int e^{-x} p_r(x) dx taken from the table's p_r
    def e(r: int) -> Scalar:
        return exp_moment(t.p(r), 1)

    lhs = sum((Fraction(e(r)) / (fact(2 * r - 1) * fact(2 * (n - r + 1))) for r in range(1, n + 1)), Fraction(0))
    rhs = Fraction(0)
    for r in range(1, n + 1):
        for k in range(1, r + 1):
            num = (4**k - 1) * to_fraction(bernoulli_number(2 * k)) * e(r - k + 1)
            rhs += num / (fact(2 * k) * fact(2 * (n - r) + 1) * fact(2 * (r - k) + 1))
    return _cmp(normalize(lhs), normalize(2 * rhs))


def _even_binom_sum(n: int) -> int:
    return sum(binomial(2 * n, 2 * k) for k in range(n + 1))


def _eq2_33(t: SequenceTable, n: int) -> Verdict:
    lhs = to_fraction(bernoulli_number(2 * n)) * _even_binom_sum(n)
    rhs = Fraction(n, 1 - 4**n) * exp_moment_div_x(t.p(n), 1)
    return _cmp(normalize(lhs), normalize(rhs))


def _eq2_34(t: SequenceTable, n: int) -> Verdict:
    return _cmp(_even_binom_sum(n), t.p(n).derivative(2)(0) + 2)


def _eq2_36(t: SequenceTable, n: int) -> Verdict:
    # the binomial sum and the Bernoulli formula it produces
    b = Fraction(2 * n, 4**n - 16**n) * exp_moment_div_x(t.p(n), 1)
    return _all([(_even_binom_sum(n), 2 ** (2 * n - 1)), (normalize(b), bernoulli_number(2 * n))])


def _eq2_35(t: SequenceTable, n: int) -> Verdict:
    if n == 2:
        return _cmp(t.p(2).derivative(2)(0), 6)
    s = Fraction(0)
    for k in range(2, n):
        w = binomial(2 * n, 2 * k - 1) * Fraction(4 ** (n - k + 1) - 1, n - k + 1)
        s += w * to_fraction(bernoulli_number(2 * (n - k + 1))) * t.p(k).derivative(2)(0)
    return _cmp(t.p(n).derivative(2)(0), normalize(s / (2 - n)))


def _eq2_38(t: SequenceTable, n: int) -> Verdict:
    s = Fraction(0)
    for k in range(2, n):
        w = binomial(2 * n, 2 * k - 1) * Fraction((4 ** (n - k + 1) - 1) * (4 ** (k - 1) - 1), n - k + 1)
        s += w * to_fraction(bernoulli_number(2 * (n - k + 1)))
    rhs = (4 ** (n - 1) - 1) * (2 - n)
    return _cmp(normalize(s), rhs, vacuous=n < 3)


def _eq2_41(t: SequenceTable, n: int) -> Verdict:
    p = t.p(n)
    return _cmp(exp_moment_div_x(p, 1), normalize(2 ** (2 * n - 1) * to_fraction(exp_moment_div_x(p, 2))))


def _eq2_42(t: SequenceTable, n: int) -> Verdict:
    z = Fraction((-1) ** n, 2 * (4**n - 1) * fact(2 * n - 1)) * exp_moment_div_x(t.p(n), 1)
    return _cmp(normalize(z), zeta_even_ratio(n))


def _eq1_27(t: SequenceTable, n: int) -> Verdict:
    rhs = Fraction(4**n - 1, 4 ** (n - 1)) * (-1) ** n * fact(2 * n - 1) * to_fraction(zeta_even_ratio(n))
    return _cmp(exp_moment_div_x(t.p(n), 2), normalize(rhs))


def _eq2_13(t: SequenceTable, n: int) -> Verdict:
    return _cmp(normalize(Fraction(n, 1 - 4**n) * exp_moment_div_x(t.p(n), 2)), bernoulli_number(2 * n))


def _eq2_20(t: SequenceTable, n: int) -> Verdict:
    return _cmp(exp_moment(t.p(n), 1), euler_number(2 * n))


def _eq1_15(t: SequenceTable, n: int) -> Verdict:
    return _cmp(t.p(n), gen_p(n, "explicit_coeffs"))


def _variants(fn, variants, target):
    def check(t: SequenceTable, n: int) -> Verdict:
        return _all((fn(n, v), target(n)) for v in variants)

    return check


def _thm1(t: SequenceTable, n: int) -> Verdict:
    return _cmp(bernoulli_via_moment(n, "thm1"), bernoulli_number(2 * n))


def _thm2(t: SequenceTable, n: int) -> Verdict:
    return _cmp(euler_via(n, "thm2"), euler_number(2 * n))


def _thm3(t: SequenceTable, n: int) -> Verdict:
    r = staudt_clausen_check(n)
    return _cmp((r.integrality_2_43, r.integrality_2_44, r.fractional_part_ok), (True, True, True))


def _thm4(t: SequenceTable, n: int) -> Verdict:
    return _cmp(verify_theorem4(n), True)


def _corollary1(t: SequenceTable, n: int) -> Verdict:
    return _cmp(zeta_even_ratio(n, "corollary1"), zeta_even_ratio(n, "euler_2_10"))


def _corollary2(t: SequenceTable, n: int) -> Verdict:
    v = normalize(2 * n * to_fraction(exp_moment_div_x(t.p(n), 2)))
    return _cmp(isinstance(v, int), True)


def _eq3_11_3_13(t: SequenceTable, n: int) -> Verdict:
    r = verify_odd_zeta_identity(n)
    if not r.equal:
        return Verdict(FAIL, r.lhs, r.rhs)
    if not r.expanded_equal:
        return Verdict(FAIL, r.rhs_expanded, r.rhs)
    for b in r.brackets:
        if b != 0:
            return Verdict(FAIL, b, 0)
    return Verdict(PASS, r.lhs, r.rhs)


def _thm4_brackets(t: SequenceTable, n: int) -> Verdict:
    # the bracket of index n is zero exactly when the odd-index Bernoulli sum vanishes at n
    return _cmp(odd_zeta_bracket(n), 0)


# generating-function PDEs, one coefficient of t^(2n) per verdict


def _pde_order(n: int) -> int:
    return n + 1


def _pde_1_22(t: SequenceTable, n: int) -> Verdict:
    N = _pde_order(n)
    phi = t.phi(N)
    res = phi.d_dt_over_t() + biseries_times(sinh_over_t_series(N - 1) * X, phi)
    return _cmp(res[n], Poly())


def _pde_1_23(t: SequenceTable, n: int) -> Verdict:
    N = _pde_order(n)
    phi = t.phi(N)
    res = phi.d_dx() + cosh_minus_one_series(N) * phi
    return _cmp(res[n], Poly())


def _pde_1_24(t: SequenceTable, n: int) -> Verdict:
    N = _pde_order(n)
    phi = t.phi(N)
    lhs = phi.d_dx().map_terms(lambda p: p.shift_x())
    # tanh(t/2) d/dt = t^2 * (tanh(t/2)/t) * ((1/t) d/dt)
    rhs = (tanh_half_over_t_series(N - 1) * phi.d_dt_over_t()).truncate(N).shift_t2()
    return _cmp(lhs[n], rhs[n])


def _pde_2_25(t: SequenceTable, n: int) -> Verdict:
    N = _pde_order(n)
    f = t.f(N)
    bracket = sinh_over_t_series(N - 1) * X + tanh_over_t_series(N - 1)
    res = f.d_dt_over_t() + biseries_times(bracket, f)
    return _cmp(res[n], Poly())


def _pde_2_26(t: SequenceTable, n: int) -> Verdict:
    N = _pde_order(n)
    f = t.f(N)
    res = f.d_dx() + cosh_minus_one_series(N) * f
    return _cmp(res[n], Poly())


def _pde_2_27(t: SequenceTable, n: int) -> Verdict:
    N = _pde_order(n)
    f = t.f(N)
    lhs = f.d_dx().map_terms(lambda p: p.shift_x())
    inner = f.d_dt_over_t() + biseries_times(tanh_over_t_series(N - 1), f)
    rhs = (tanh_half_over_t_series(N - 1) * inner).truncate(N).shift_t2()
    return _cmp(lhs[n], rhs[n])


def biseries_times(a: Biseries, b: Biseries) -> Biseries:
    return a * b.truncate(min(a.order, b.order))


_CHECKS = [
    IdentityCheck("p_values", 1, _p_values, "p_n(0)=0, p_n'(0)=-1, p_n''(0)=2(2^(2(n-1))-1)"),
    IdentityCheck("q_values", 1, _q_values, "q_n(0)=q_n'(0)=E_2n, q_n''(0)=E_2n+1"),
    IdentityCheck("eq1_13", 0, _eq1_13, "differential recurrence for p_(n+1)"),
    IdentityCheck("eq1_14", 1, _eq1_14, "leading coefficient (-1)^n (2n-1)!!"),
    IdentityCheck("eq1_15", 1, _eq1_15, "explicit coefficients a_(n,k)"),
    IdentityCheck("eq1_18", 1, _eq1_18, "p_n' = -sum C(2n,2k) p_k"),
    IdentityCheck("eq1_20", 0, _eq1_20, "p_(n+1) = -x sum C(2n+1,2k) p_k"),
    IdentityCheck("eq1_21", 1, _eq1_21, "x sum C(2n+1,2k) p_k' = sum C(2n+1,2k-1) p_k"),
    IdentityCheck("eq1_27", 1, _eq1_27, "even zeta values from int e^(-2x) p_n dx/x"),
    IdentityCheck("eq2_13", 1, _eq2_13, "B_2n from int e^(-2x) p_n dx/x"),
    IdentityCheck("eq2_14", 1, _eq2_14, "B_4n from int e^(-2x) p_n^2 dx/x"),
    IdentityCheck("eq2_15", 1, _eq2_15, "int e^(-2x) p_2n dx/x = int e^(-2x) p_n^2 dx/x"),
    IdentityCheck("eq2_16", 1, _eq2_16, "int e^(-2x) p_(a+b) dx/x = int e^(-2x) p_a p_b dx/x"),
    IdentityCheck("eq2_17", 1, _eq2_17, "B_2n from every split p_(n-k) p_(m+k)"),
    IdentityCheck("eq2_20", 0, _eq2_20, "E_2n = int e^(-x) p_n dx"),
    IdentityCheck("eq2_21", 0, _eq2_21, "q_n = sum_k p_n^(k)"),
    IdentityCheck("eq2_22_vs_2_28", 0, _eq2_22_vs_2_28, "Euler convolution and its inverse"),
    IdentityCheck("eq2_23", 1, _eq2_23, "binomial-type addition formula"),
    IdentityCheck("eq2_24", 1, _eq2_24, "q_n''(0) = E_2n + 1"),
    IdentityCheck("eq2_29", 1, _eq2_29, "q_n' = -sum C(2n,2k) q_k"),
    IdentityCheck("eq2_30", 1, _eq2_30, "x p_n' as a Bernoulli-weighted combination"),
    IdentityCheck("eq2_31", 1, _eq2_31, "sum C(2n,2k-1)(2^(2k)-1)B_2k/k = 1"),
    IdentityCheck("eq2_32", 1, _eq2_32, "Euler/Bernoulli convolution identity"),
    IdentityCheck("eq2_33", 1, _eq2_33, "B_2n sum C(2n,2k) vs int e^(-x) p_n dx/x"),
    IdentityCheck("eq2_34", 1, _eq2_34, "sum C(2n,2k) = p_n''(0) + 2"),
    IdentityCheck("eq2_35", 1, _eq2_35, "recurrence for p_n''(0), n != 2"),
    IdentityCheck("eq2_36", 1, _eq2_36, "sum C(2n,2k) = 2^(2n-1) and the resulting B_2n formula"),
    IdentityCheck("eq2_38", 1, _eq2_38, "Bernoulli identity from p_n''(0)"),
    IdentityCheck("eq2_41", 1, _eq2_41, "int e^(-x) p_n dx/x = 2^(2n-1) int e^(-2x) p_n dx/x"),
    IdentityCheck("eq2_42", 1, _eq2_42, "zeta(2n)/pi^2n from int e^(-x) p_n dx/x"),
    IdentityCheck(
        "bernoulli_variants",
        1,
        _variants(bernoulli_via_moment, ("eq2_13", "eq2_37", "explicit_2_39", "explicit_2_40", "thm1"),
                  lambda n: bernoulli_number(2 * n)),
        "every B_2n formula agrees with the recurrence",
    ),
    IdentityCheck(
        "euler_variants",
        1,
        _variants(euler_via, ("moment_2_20", "q_at_0", "explicit", "thm2"), lambda n: euler_number(2 * n)),
        "every E_2n formula agrees with the recurrence",
    ),
    IdentityCheck("thm1", 1, _thm1, "B_2n from Euler numbers"),
    IdentityCheck("thm2", 1, _thm2, "recurrence E_2n = 1 - sum 2^(2(n-k)-1) C(2n,2k) E_2k"),
    IdentityCheck("thm3", 1, _thm3, "integrality and Von Staudt-Clausen"),
    IdentityCheck("thm4", 1, _thm4, "sum C(2n+1,2k)(2^(2k-1)-1)B_2k = 0"),
    IdentityCheck("thm4_brackets", 1, _thm4_brackets, "odd-zeta bracket sums vanish"),
    IdentityCheck("corollary1", 1, _corollary1, "zeta(2n)/pi^2n from Euler numbers"),
    IdentityCheck("corollary2", 1, _corollary2, "2n int e^(-2x) p_n dx/x is an integer"),
    IdentityCheck("eq3_11_3_13", 0, _eq3_11_3_13, "odd zeta identity as exact ZetaComb"),
    IdentityCheck("pde1_22", 0, _pde_1_22, "Phi_t + x sinh t Phi = 0"),
    IdentityCheck("pde1_23", 0, _pde_1_23, "Phi_x + 2 sinh^2(t/2) Phi = 0"),
    IdentityCheck("pde1_24", 0, _pde_1_24, "x Phi_x = tanh(t/2) Phi_t"),
    IdentityCheck("pde2_25", 0, _pde_2_25, "F_t + (x sinh t + tanh t) F = 0"),
    IdentityCheck("pde2_26", 0, _pde_2_26, "F_x + 2 sinh^2(t/2) F = 0"),
    IdentityCheck("pde2_27", 0, _pde_2_27, "x F_x = tanh(t/2)(F_t + F tanh t)"),
]

REGISTRY: Dict[str, IdentityCheck] = {c.id: c for c in _CHECKS}
GF_PDE_IDS = ("pde1_22", "pde1_23", "pde1_24", "pde2_25", "pde2_26", "pde2_27")


def check_ids() -> List[str]:
    return list(REGISTRY)


def _lookup(check_id: str, registry: Dict[str, IdentityCheck]) -> IdentityCheck:
    try:
        return registry[check_id]
    except KeyError:
        raise UnknownCheckError(check_id) from None


def _run(check: IdentityCheck, n_max: int, table: SequenceTable) -> IdentityReport:
    report = IdentityReport(check.id, (check.min_n, n_max), description=check.description)
    for n in range(check.min_n, n_max + 1):
        try:
            v = check.verifier(table, n)
        except ArithmeticError as exc:
            v = Verdict(FAIL, f"error: {exc}", None)
        report.verdicts.append(v.status)
        if v.status == FAIL and report.counterexample is None:
            report.counterexample = {"n": n, "lhs": _ser(v.lhs), "rhs": _ser(v.rhs)}
    return report


def run_check(
    check_id: str,
    n_max: int,
    table: Optional[SequenceTable] = None,
    registry: Optional[Dict[str, IdentityCheck]] = None,
) -> IdentityReport:
    """Evaluate one registered identity for every valid n <= n_max."""
    check = _lookup(check_id, registry or REGISTRY)
    if n_max < check.min_n:
        raise ValueError(f"{check_id} starts at n = {check.min_n}; got n_max = {n_max}")
    return _run(check, n_max, table or SequenceTable())


def run_all(
    n_max: int,
    ids: Optional[Sequence[str]] = None,
    table: Optional[SequenceTable] = None,
    registry: Optional[Dict[str, IdentityCheck]] = None,
) -> List[IdentityReport]:
    """Run the listed checks (default: all), in registry order.

    A check whose first valid n exceeds ``n_max`` yields an empty-range report
    instead of an error.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    registry = registry or REGISTRY
    if ids is None:
        chosen = list(registry.values())
    else:
        wanted = [_lookup(i, registry) for i in ids]
        order = {k: i for i, k in enumerate(registry)}
        chosen = sorted(dict.fromkeys(wanted, None), key=lambda c: order[c.id])
    table = table or SequenceTable()
    return [_run(c, n_max, table) for c in chosen]


def all_pass(reports: Iterable[IdentityReport]) -> bool:
    return all(r.passed for r in reports)

"""Bernoulli and Euler numbers through the Sheffer sequences, zeta(2n)/pi^(2n)
ratios, and exact bookkeeping of odd zeta values.

Every alternative formula returns an exact rational and is expected to agree
with the classical recurrences in :mod:`shefferzeta.classical`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .classical import bernoulli_number, bernoulli_poly, euler_number
from .exact import (
    InconsistencyError,
    Poly,
    Scalar,
    binomial,
    exp_moment,
    exp_moment_div_x,
    fact,
    format_rational,
    normalize,
    parse_rational,
    to_fraction,
)
from .sheffer import gen_p, gen_q

__all__ = [
    "ZetaComb",
    "bernoulli_number",
    "bernoulli_poly",
    "euler_number",
    "BERNOULLI_VARIANTS",
    "EULER_VARIANTS",
    "ZETA_VARIANTS",
    "bernoulli_via_moment",
    "euler_via",
    "zeta_even_ratio",
    "StaudtClausenReport",
    "staudt_clausen_check",
    "sinh_moment",
    "odd_bernoulli_tau_poly",
    "OddZetaReport",
    "verify_odd_zeta_identity",
    "odd_zeta_bracket",
    "verify_theorem4",
    "primes_upto",
]

BERNOULLI_VARIANTS = ("eq2_13", "eq2_37", "explicit_2_39", "explicit_2_40", "thm1")
EULER_VARIANTS = ("moment_2_20", "q_at_0", "explicit", "thm2")
ZETA_VARIANTS = ("euler_2_10", "moment_2_42", "corollary1")


class ZetaComb:
    """const + sum_m coeffs[m] * zeta(2m+3)/pi^(2m+3), with rational coefficients.

    The odd zeta symbols are treated as independent, so equality is
    coefficient-wise.
    """

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None, const: Scalar = 0):
        cleaned: Dict[int, Scalar] = {}
        for m, c in (coeffs or {}).items():
            if m < 0:
                raise ValueError("ZetaComb index m must be >= 0")
            c = normalize(c)
            if c != 0:
                cleaned[int(m)] = c
        object.__setattr__(self, "coeffs", dict(sorted(cleaned.items())))
        object.__setattr__(self, "const", normalize(const))

    def __setattr__(self, name, value):
        raise AttributeError("ZetaComb is immutable")

    @classmethod
    def zeta(cls, m: int, c: Scalar = 1) -> "ZetaComb":
        return cls({m: c})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ZetaComb(const=other)
        if not isinstance(other, ZetaComb):
            return NotImplemented
        return self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self) -> int:
        return hash((tuple(self.coeffs.items()), self.const))

    def __add__(self, other) -> "ZetaComb":
        if isinstance(other, (int, Fraction)):
            other = ZetaComb(const=other)
        if not isinstance(other, ZetaComb):
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return ZetaComb(out, self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> "ZetaComb":
        return self * -1

    def __sub__(self, other) -> "ZetaComb":
        return self + (-other)

    def __mul__(self, k) -> "ZetaComb":
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return ZetaComb({m: c * k for m, c in self.coeffs.items()}, self.const * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs and self.const == 0

    def __repr__(self) -> str:
        terms = [f"{format_rational(c)}*zeta({2 * m + 3})/pi^{2 * m + 3}" for m, c in self.coeffs.items()]
        if self.const or not terms:
            terms.insert(0, format_rational(self.const))
        return "ZetaComb(" + " + ".join(terms) + ")"

    def to_json(self) -> dict:
        return {
            "const": format_rational(self.const),
            "zeta": {str(2 * m + 3): format_rational(c) for m, c in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ZetaComb":
        coeffs = {}
        for key, val in data.get("zeta", {}).items():
            s = int(key)
            if s < 3 or s % 2 == 0:
                raise ValueError(f"zeta key {key!r} must be an odd integer >= 3")
            coeffs[(s - 3) // 2] = parse_rational(val)
        return cls(coeffs, parse_rational(data.get("const", "0")))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _explicit_inner(n: int, k: int) -> Fraction:
    """sum_r sum_j (-1)^(r+j) 2^(-r-j) C(k,r) C(k-r,j) (r-j)^(2n) = k! a_{n,k}."""
    acc = Fraction(0)
    for r in range(k + 1):
        for j in range(k - r + 1):
            term = Fraction(binomial(k, r) * binomial(k - r, j) * (r - j) ** (2 * n), 2 ** (r + j))
            acc += -term if (r + j) % 2 else term
    return acc


def bernoulli_via_moment(n: int, variant: str = "eq2_13") -> Scalar:
    """B_{2n} by one of the Sheffer-sequence formulas."""
    if n < 1:
        raise ValueError("n must be >= 1")
    four_n = 4**n
    if variant == "eq2_13":
        val = Fraction(n, 1 - four_n) * exp_moment_div_x(gen_p(n), 2)
    elif variant == "eq2_37":
        val = Fraction(2 * n, four_n - four_n**2) * exp_moment_div_x(gen_p(n), 1)
    elif variant == "explicit_2_39":
        s = sum((_explicit_inner(n, k) / (2**k * k) for k in range(1, n + 1)), Fraction(0))
        val = Fraction(n, 1 - four_n) * s
    elif variant == "explicit_2_40":
        s = sum((_explicit_inner(n, k) / k for k in range(1, n + 1)), Fraction(0))
        val = Fraction(2 * n, four_n * (1 - four_n)) * s
    elif variant == "thm1":
        s = sum(binomial(2 * n - 1, 2 * k) * euler_number(2 * k) for k in range(n))
        val = Fraction(2 * n * s, four_n * (four_n - 1))
    else:
        raise ValueError(f"unknown Bernoulli variant {variant!r}")
    return normalize(val)


_thm2_memo = [1]


def _euler_thm2(n: int) -> int:
    # self-contained: earlier terms come from the same recurrence
    while len(_thm2_memo) <= n:
        m = len(_thm2_memo)
        s = sum(2 ** (2 * (m - k) - 1) * binomial(2 * m, 2 * k) * _thm2_memo[k] for k in range(m))
        _thm2_memo.append(1 - s)
    return _thm2_memo[n]


def _as_int(v: Scalar, what: str) -> int:
    v = normalize(v)
    if not isinstance(v, int):
        raise InconsistencyError(f"{what} = {v} is not an integer")
    return v


def euler_via(n: int, variant: str = "moment_2_20") -> int:
    """E_{2n} by one of the Sheffer-sequence routes."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if variant == "moment_2_20":
        val = exp_moment(gen_p(n), 1)
    elif variant == "q_at_0":
        val = gen_q(n)(0)
    elif variant == "explicit":
        # sum_k k! sum_r (-1)^r/(2^r r!) sum_j (-1)^j (r-j)^(2n)/(2^j j! (k-r-j)!);
        # the k = 0 term only survives for n = 0 (0^0 = 1)
        val = Fraction(0)
        for k in range(n + 1):
            inner = Fraction(0)
            for r in range(k + 1):
                for j in range(k - r + 1):
                    t = Fraction((r - j) ** (2 * n), 2 ** (r + j) * fact(r) * fact(j) * fact(k - r - j))
                    inner += -t if (r + j) % 2 else t
            val += fact(k) * inner
    elif variant == "thm2":
        if n < 1:
            raise ValueError("thm2 needs n >= 1")
        val = _euler_thm2(n)
    else:
        raise ValueError(f"unknown Euler variant {variant!r}")
    return _as_int(val, f"E_{2 * n} via {variant}")


def zeta_even_ratio(n: int, variant: str = "euler_2_10") -> Scalar:
    """The rational zeta(2n)/pi^(2n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    four_n = 4**n
    if variant == "euler_2_10":
        val = (-1) ** (n - 1) * Fraction(2 ** (2 * n - 1), fact(2 * n)) * bernoulli_number(2 * n)
    elif variant == "moment_2_42":
        val = Fraction((-1) ** n, 2 * (four_n - 1) * fact(2 * n - 1)) * exp_moment_div_x(gen_p(n), 1)
    elif variant == "corollary1":
        s = sum(
            (Fraction(euler_number(2 * k), fact(2 * k) * fact(2 * (n - k) - 1)) for k in range(n)),
            Fraction(0),
        )
        val = Fraction((-1) ** (n + 1), 2 * (four_n - 1)) * s
    else:
        raise ValueError(f"unknown zeta-ratio variant {variant!r}")
    return normalize(val)


def primes_upto(n: int) -> list:
    """Primes <= n by trial division (n stays small here)."""
    out = []
    for c in range(2, n + 1):
        if all(c % p for p in out if p * p <= c):
            out.append(c)
    return out


@dataclass(frozen=True)
class StaudtClausenReport:
    n: int
    integrality_2_43: bool
    integrality_2_44: bool
    fractional_part_ok: bool

    @property
    def ok(self) -> bool:
        return self.integrality_2_43 and self.integrality_2_44 and self.fractional_part_ok


def staudt_clausen_check(n: int) -> StaudtClausenReport:
    if n < 1:
        raise ValueError("n must be >= 1")
    b = to_fraction(bernoulli_number(2 * n))
    scale = 2 * (4**n - 1)
    i43 = (scale * b).denominator == 1
    i44 = (scale * to_fraction(zeta_even_ratio(n)) * fact(2 * n - 1)).denominator == 1
    vsc = b + sum((Fraction(1, p) for p in primes_upto(2 * n + 1) if (2 * n) % (p - 1) == 0), Fraction(0))
    return StaudtClausenReport(n, i43, i44, vsc.denominator == 1)


def sinh_moment(alpha: int):
    """int_0^inf tau^(alpha-1)/sinh(pi tau) d tau = (2^a - 1)/(pi^a 2^(a-1)) Gamma(a) zeta(a).

    Odd alpha gives a ZetaComb with a single zeta(alpha)/pi^alpha entry; even
    alpha folds zeta(alpha)/pi^alpha into an exact rational.
    """
    if alpha < 2:
        raise ValueError("alpha must be >= 2 (the integral diverges otherwise)")
    c = Fraction((2**alpha - 1) * fact(alpha - 1), 2 ** (alpha - 1))
    if alpha % 2:
        return ZetaComb.zeta((alpha - 3) // 2, c)
    return normalize(c * zeta_even_ratio(alpha // 2))


def odd_bernoulli_tau_poly(k: int) -> Poly:
    """R_k with i*tau*B_{2k+1}((1 - i tau)/2) = R_k(tau^2).

    The substitution is expanded over Gaussian rationals; any imaginary part or
    odd power of tau left over is an error.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    b = bernoulli_poly(2 * k + 1)
    # polynomials in tau with (re, im) coefficient pairs
    half = Fraction(1, 2)
    arg = [(half, Fraction(0)), (Fraction(0), -half)]  # 1/2 - (i/2) tau
    acc: list = []
    for c in reversed(b.coeffs):
        acc = _cmul(acc, arg)
        if acc:
            acc[0] = (acc[0][0] + c, acc[0][1])
        else:
            acc = [(to_fraction(c), Fraction(0))]
    # multiply by i*tau: (a + ib) * i = -b + ia, shifted by one power
    shifted = [(Fraction(0), Fraction(0))] + [(-im, re) for re, im in acc]
    out = []
    for power, (re, im) in enumerate(shifted):
        if im != 0 or (power % 2 and re != 0):
            raise InconsistencyError(f"R_{k}: coefficient of tau^{power} is not real-even")
        if power % 2 == 0:
            out.append(re)
    return Poly(out)


def _cmul(a: list, b: list) -> list:
    if not a:
        return []
    out = [(Fraction(0), Fraction(0))] * (len(a) + len(b) - 1)
    for i, (ar, ai) in enumerate(a):
        for j, (br, bi) in enumerate(b):
            r, m = out[i + j]
            out[i + j] = (r + ar * br - ai * bi, m + ar * bi + ai * br)
    return out


def _tau_poly_sinh_integral(r: Poly) -> ZetaComb:
    # int_0^inf R(tau^2)/sinh(pi tau) d tau, term by term
    acc = ZetaComb()
    for l, c in enumerate(r.coeffs):
        if c == 0:
            continue
        if l == 0:
            raise ValueError("constant term diverges against 1/sinh(pi tau)")
        acc = acc + sinh_moment(2 * l + 1) * c
    return acc


def odd_zeta_bracket(j: int) -> Scalar:
    """sum_{k=0}^{j} (2^(2k) - 2) B_{2k} / ((2k)! (2(j-k)+1)!)."""
    return normalize(
        sum(
            (
                (4**k - 2) * to_fraction(bernoulli_number(2 * k)) / (fact(2 * k) * fact(2 * (j - k) + 1))
                for k in range(j + 1)
            ),
            Fraction(0),
        )
    )


@dataclass(frozen=True)
class OddZetaReport:
    n: int
    lhs: ZetaComb
    rhs: ZetaComb
    rhs_expanded: ZetaComb
    brackets: Tuple[Scalar, ...]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def expanded_equal(self) -> bool:
        return self.rhs_expanded == self.rhs

    @property
    def brackets_vanish(self) -> bool:
        return all(b == 0 for b in self.brackets)

    @property
    def ok(self) -> bool:
        return self.equal and self.expanded_equal and self.brackets_vanish


def verify_odd_zeta_identity(n: int) -> OddZetaReport:
    """Both sides of the odd-zeta identity as ZetaComb, plus the vanishing brackets.

    lhs = sum_k 2^(2k)/((2k+1)!(2(n-k)+1)!) int_0^inf R_k(tau^2)/sinh(pi tau) d tau,
    rhs = (-1)^n (n+1) (2 - 2^(-2(n+1))) zeta(2n+3)/pi^(2n+3).
    ``rhs_expanded`` regroups the double sum by zeta index before any
    cancellation; ``brackets[m]`` for m < n are the inner sums that must vanish.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    lhs = ZetaComb()
    for k in range(n + 1):
        w = Fraction(4**k, fact(2 * k + 1) * fact(2 * (n - k) + 1))
        lhs = lhs + _tau_poly_sinh_integral(odd_bernoulli_tau_poly(k)) * w
    rhs = ZetaComb.zeta(n, (-1) ** n * (n + 1) * (2 - Fraction(1, 4 ** (n + 1))))
    expanded = ZetaComb()
    brackets = []
    for m in range(n + 1):
        br = odd_zeta_bracket(n - m)
        if m < n:
            brackets.append(br)
        expanded = expanded + ZetaComb.zeta(m, (-1) ** (m + 1) * (m + 1) * (2 - Fraction(1, 4 ** (m + 1))) * br)
    return OddZetaReport(n, lhs, rhs, expanded, tuple(brackets))


def verify_theorem4(n: int) -> bool:
    """sum_{k=0}^{n} C(2n+1,2k) (2^(2k-1) - 1) B_{2k} == 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s = sum(
        (
            binomial(2 * n + 1, 2 * k) * (Fraction(4**k, 2) - 1) * to_fraction(bernoulli_number(2 * k))
            for k in range(n + 1)
        ),
        Fraction(0),
    )
    return s == 0

"""The polynomial sequences p_n and q_n, built by several independent routes.

p_n(x) = (-1)^n e^x A^n e^{-x} with A = x^2 - x d/dx x d/dx, generated by
exp(-2x sinh^2(t/2)) = sum p_n(x) t^(2n)/(2n)!.  q_n is generated by the same
series divided by cosh t.
"""

from __future__ import annotations

import threading
from enum import Enum
from fractions import Fraction
from typing import Dict, List

from .classical import euler_number
from .exact import (
    X,
    Biseries,
    InconsistencyError,
    Poly,
    binomial,
    biseries_div,
    biseries_exp,
    fact,
)

__all__ = [
    "SequenceRoute",
    "P_ROUTES",
    "Q_ROUTES",
    "gen_p",
    "gen_q",
    "coeff_a",
    "gf_phi",
    "gf_f",
    "cosh_series",
    "cosh_minus_one_series",
    "sinh_over_t_series",
    "tanh_over_t_series",
    "tanh_half_over_t_series",
]


class SequenceRoute(str, Enum):
    # p_n
    DIFF_RECURRENCE = "diff_recurrence"
    SUM_RECURRENCE = "sum_recurrence"
    EXPLICIT_COEFFS = "explicit_coeffs"
    # q_n
    DERIVATIVE_SUM = "derivative_sum"
    EULER_CONVOLUTION = "euler_convolution"
    INVERSE_RECURRENCE = "inverse_recurrence"


P_ROUTES = ("diff_recurrence", "sum_recurrence", "explicit_coeffs")
Q_ROUTES = ("derivative_sum", "euler_convolution", "inverse_recurrence")

_lock = threading.RLock()
_memo: Dict[str, List[Poly]] = {}


def _route(route, allowed) -> str:
    tag = route.value if isinstance(route, SequenceRoute) else str(route)
    if tag not in allowed:
        raise ValueError(f"route {tag!r} is not one of {', '.join(allowed)}")
    return tag


def _fill(tag: str, n: int, step) -> Poly:
    table = _memo.get(tag)
    if table is not None and len(table) > n:
        return table[n]
    with _lock:
        table = _memo.setdefault(tag, [])
        while len(table) <= n:
            table.append(step(len(table), table))
        return table[n]


def _diff_step(m: int, table: List[Poly]) -> Poly:
    if m == 0:
        return Poly.const(1)
    p = table[m - 1]
    # p_{m} = x^2 p'' + x(1 - 2x) p' - x p
    return X * X * p.derivative(2) + Poly((0, 1, -2)) * p.derivative() - X * p


def _sum_step(m: int, table: List[Poly]) -> Poly:
    if m == 0:
        return Poly.const(1)
    n = m - 1
    acc = Poly()
    for k in range(n + 1):
        acc = acc + table[k] * binomial(2 * n + 1, 2 * k)
    return -acc.shift_x()


def _explicit_step(m: int, table: List[Poly]) -> Poly:
    if m == 0:
        return Poly.const(1)
    return Poly([0] + [coeff_a(m, k) for k in range(1, m + 1)])


def gen_p(n: int, route=SequenceRoute.DIFF_RECURRENCE) -> Poly:
    """p_n with integer coefficients.

    ``diff_recurrence`` is the reference; ``sum_recurrence`` uses
    p_{n+1} = -x sum_k C(2n+1,2k) p_k and ``explicit_coeffs`` the closed-form
    double sum for a_{n,k}.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    tag = _route(route, P_ROUTES)
    step = {
        "diff_recurrence": _diff_step,
        "sum_recurrence": _sum_step,
        "explicit_coeffs": _explicit_step,
    }[tag]
    p = _fill("p:" + tag, n, step)
    if not p.is_integral():
        raise InconsistencyError(f"p_{n} via {tag} has non-integer coefficients")
    return p


def coeff_a(n: int, k: int) -> int:
    """a_{n,k} = (1/k!) sum_r sum_j (-1)^(r+j) 2^(-r-j) C(k,r) C(k-r,j) (r-j)^(2n).

    Summed over integers after clearing the 2^k k! denominator; a nonzero
    remainder means the formula and the sequence disagree.
    """
    if not 1 <= k <= n:
        raise ValueError("coeff_a needs 1 <= k <= n")
    total = 0
    for r in range(k + 1):
        ckr = binomial(k, r)
        for j in range(k - r + 1):
            term = ckr * binomial(k - r, j) * (r - j) ** (2 * n) << (k - r - j)
            total += -term if (r + j) % 2 else term
    den = fact(k) << k
    a, rem = divmod(total, den)
    if rem:
        raise InconsistencyError(f"a_({n},{k}) = {Fraction(total, den)} is not an integer")
    return a


def _q_derivative_sum(m: int, table: List[Poly]) -> Poly:
    p = gen_p(m)
    acc, d = Poly(), p
    while d:
        acc = acc + d
        d = d.derivative()
    return acc


def _q_euler_convolution(m: int, table: List[Poly]) -> Poly:
    acc = Poly()
    for k in range(m + 1):
        acc = acc + gen_p(k) * (euler_number(2 * (m - k)) * binomial(2 * m, 2 * k))
    return acc


def _q_inverse_recurrence(m: int, table: List[Poly]) -> Poly:
    # q_m' = -sum_{k<m} C(2m,2k) q_k; the constant comes from evaluating
    # p_m = sum_k C(2m,2k) q_k at x = 0, where p_m(0) = 0 for m >= 1.
    if m == 0:
        return Poly.const(1)
    slope = Poly()
    const = 0
    for k in range(m):
        c = binomial(2 * m, 2 * k)
        slope = slope - table[k] * c
        const -= c * table[k][0]
    return slope.antiderivative(const)


def gen_q(n: int, route=SequenceRoute.DERIVATIVE_SUM) -> Poly:
    """q_n = e^x int_x^inf e^{-t} p_n(t) dt by one of three routes."""
    if n < 0:
        raise ValueError("n must be >= 0")
    tag = _route(route, Q_ROUTES)
    step = {
        "derivative_sum": _q_derivative_sum,
        "euler_convolution": _q_euler_convolution,
        "inverse_recurrence": _q_inverse_recurrence,
    }[tag]
    q = _fill("q:" + tag, n, step)
    if not q.is_integral():
        raise InconsistencyError(f"q_{n} via {tag} has non-integer coefficients")
    return q


def cosh_series(order: int) -> Biseries:
    return Biseries.scalar([Fraction(1, fact(2 * k)) for k in range(order + 1)], order)


def cosh_minus_one_series(order: int) -> Biseries:
    """cosh t - 1 = 2 sinh^2(t/2)."""
    return Biseries.scalar([0] + [Fraction(1, fact(2 * k)) for k in range(1, order + 1)], order)


def sinh_over_t_series(order: int) -> Biseries:
    return Biseries.scalar([Fraction(1, fact(2 * k + 1)) for k in range(order + 1)], order)


def tanh_over_t_series(order: int) -> Biseries:
    return sinh_over_t_series(order) / cosh_series(order)


def tanh_half_over_t_series(order: int) -> Biseries:
    """tanh(t/2)/t as the quotient of the sinh(t/2) and cosh(t/2) series."""
    sh = [Fraction(1, fact(2 * k + 1) * 2 ** (2 * k + 1)) for k in range(order + 1)]
    ch = [Fraction(1, fact(2 * k) * 2 ** (2 * k)) for k in range(order + 1)]
    return Biseries.scalar(sh, order) / Biseries.scalar(ch, order)


def gf_phi(order: int) -> Biseries:
    """exp(-x (cosh t - 1)) truncated at t^(2*order); term n is p_n/(2n)!."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return biseries_exp(cosh_minus_one_series(order) * (-X))


def gf_f(order: int) -> Biseries:
    """gf_phi divided by cosh t; term n is q_n/(2n)!."""
    return biseries_div(gf_phi(order), cosh_series(order))

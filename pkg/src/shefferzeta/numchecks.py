"""Registry of transcendental identities checked by quadrature.

Each check computes its two sides independently and compares them with a
relative tolerance.  Quadrature failures turn into failed results carrying a
diagnostic rather than exceptions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import mpmath
from mpmath import mpf

from .bernoulli_euler import zeta_even_ratio
from .classical import bernoulli_number, bernoulli_poly
from .exact import Poly, binomial, fact
from .numeric import (
    GUARD_DIGITS,
    NumReal,
    QuadratureError,
    _check_prec,
    _mp_lock,
    bessel_k,
    const_catalan,
    integrate,
    kl_imag_transform,
    kl_real_transform,
    moment_I,
    moment_M,
    to_mpf,
    zeta,
)
from .sheffer import gen_p

__all__ = [
    "QuadResult",
    "NumericCheck",
    "NUMERIC_REGISTRY",
    "numeric_ids",
    "verify_numeric",
    "run_numeric",
    "UnknownNumericCheckError",
]

SINGLE_TOL = 1e-8
DOUBLE_TOL = 1e-6


class UnknownNumericCheckError(KeyError):
    def __str__(self) -> str:
        return f"unknown check: {self.args[0]}"


def _fmt(x, digits: int) -> str:
    return mpmath.nstr(to_mpf(x), digits, strip_zeros=False)


@dataclass
class QuadResult:
    id: str
    params: Dict[str, object]
    lhs: Optional[NumReal]
    rhs: Optional[NumReal]
    abs_diff: Optional[mpf]
    rel_diff: Optional[mpf]
    passed: bool
    prec: int
    tol: float
    asserted: bool = True
    error: Optional[str] = None

    @classmethod
    def compare(cls, check_id, params, lhs: NumReal, rhs: NumReal, prec, tol, asserted=True) -> "QuadResult":
        with mpmath.workdps(prec + GUARD_DIGITS):
            abs_diff = abs(lhs.value - rhs.value)
            if rhs.value == 0:
                rel = abs_diff
            else:
                rel = abs_diff / abs(rhs.value)
        return cls(check_id, params, lhs, rhs, abs_diff, rel, bool(rel <= tol), prec, tol, asserted)

    @classmethod
    def failure(cls, check_id, params, prec, tol, message: str, asserted=True) -> "QuadResult":
        return cls(check_id, params, None, None, None, None, False, prec, tol, asserted, message)

    def to_json(self) -> dict:
        d = 6
        return {
            "id": self.id,
            "params": {k: str(v) for k, v in self.params.items()},
            "lhs": None if self.lhs is None else self.lhs.to_json(),
            "rhs": None if self.rhs is None else self.rhs.to_json(),
            "abs_diff": None if self.abs_diff is None else _fmt(self.abs_diff, d),
            "rel_diff": None if self.rel_diff is None else _fmt(self.rel_diff, d),
            "pass": self.passed,
            "asserted": self.asserted,
            "prec": self.prec,
            "tol": repr(self.tol),
            "error": self.error,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


Sides = Tuple[NumReal, NumReal]


@dataclass(frozen=True)
class NumericCheck:
    id: str
    compute: Callable[..., Sides]
    default_params: Tuple[Dict[str, object], ...]
    tol: float
    description: str
    # parameter sets whose outcome is reported but not held against the run
    probes: Tuple[Dict[str, object], ...] = ()


# ---------------------------------------------------------------- helpers


def _poly_mp(p: Poly, prec: int) -> Callable[[mpf], mpf]:
    with mpmath.workdps(prec + GUARD_DIGITS):
        coeffs = [to_mpf(c) for c in p.coeffs]

    def ev(x):
        acc = mpf(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    return ev


def _div_x(p: Poly) -> Poly:
    if p[0] != 0:
        raise ValueError("p(0) != 0")
    return Poly(p.coeffs[1:])


def _exact(v, prec) -> NumReal:
    return NumReal.exact(v, prec)


def _pi(prec) -> NumReal:
    with mpmath.workdps(prec + GUARD_DIGITS):
        return _exact(+mpmath.pi, prec)


def _log2(prec) -> NumReal:
    with mpmath.workdps(prec + GUARD_DIGITS):
        return _exact(mpmath.log(2), prec)


def _nested_eps(tol) -> Tuple[mpf, mpf]:
    outer = mpf(tol) / 100
    return outer, outer / 100


def _small_x_cut(r: Poly, s: int, order: float, eps: mpf) -> mpf:
    """delta with int_0^delta |K(x) e^{-x} x^s r(x)| dx < eps.

    Uses |K_{i tau}(x)| <= K_0(x) <= ln(2/x) + 1 on (0, 1) and, for real
    order t > 0, K_t(x) <= K_0(x) + Gamma(t) (2/x)^t / 2.
    """
    big = sum(abs(Fraction(c)) for c in r.coeffs) or 1
    big = to_mpf(big)
    gam = mpmath.gamma(order) * 2**order / 2 if order > 0 else mpf(0)
    delta = mpf("1e-3")
    while True:
        b = big * delta ** (s + 1) * ((mpmath.log(2 / delta) + 2) / (s + 1))
        if order > 0:
            b += big * gam * delta ** (s + 1 - order) / (s + 1 - order)
        if b < eps:
            return delta
        delta /= 16


def _bessel_x_integral(p: Poly, order, imaginary: bool, over_x: bool, prec: int, tol) -> NumReal:
    """int_0^inf K(x) e^{-x} p(x) dx (or dx/x) with K evaluated by its own quadrature."""
    outer, inner = _nested_eps(tol)
    r = _div_x(p)
    s = 0 if over_x else 1
    order = to_mpf(order)
    with _mp_lock, mpmath.workdps(prec + GUARD_DIGITS):
        rp = _poly_mp(r, prec)
        delta = _small_x_cut(r, s, 0 if imaginary else order, outer / 10)

        def f(x):
            k = bessel_k(order, x, prec, imaginary=imaginary, rel_eps=inner, abs_eps=inner).value
            return k * mpmath.exp(-x) * rp(x) * x**s

        res = integrate(f, delta, mpmath.inf, prec, rel_eps=outer, abs_eps=outer)
        return NumReal(res.value, res.err + outer / 10, prec)


def _tau_integral(n: int, weight_power, prec: int, tol) -> NumReal:
    """int_0^inf tau^w int_0^inf K_{i tau}(x) e^{-x} p_n(x) dx/x dtau.

    The x-integral is exact once K is written as its u-integral, leaving a
    cosine transform in u.  The tau-range is cut where the Bessel decay
    exp(-pi tau/2) makes the tail negligible.
    """
    outer, inner = _nested_eps(tol)
    p = gen_p(n)
    with _mp_lock, mpmath.workdps(prec + GUARD_DIGITS):
        w = to_mpf(weight_power)
        bound = sum(abs(c) * fact(k - 1) * 2**k for k, c in enumerate(p.coeffs) if k)
        # large-tau Bessel decay ~ e^{-pi tau/2} times the x-moment of |p_n|/x
        target = outer / 10
        T = mpf(4)
        while (T ** max(w, 0)) * mpmath.exp(-mpmath.pi * T / 2) * bound * 4 / mpmath.pi > target:
            T += 1
        g = kl_imag_transform(p, prec, tau_max=T, eps=inner)
        if w == 0:
            f = lambda tau: g(tau)
        else:
            f = lambda tau: tau**w * g(tau) if tau > 0 else mpf(0)
        res = integrate(f, 0, T, prec, rel_eps=outer, abs_eps=outer)
        return NumReal(res.value, res.err + g.err * T + target, prec)


# ---------------------------------------------------------------- checks


def _eq1_25(prec, tol, n=1, tau=0.5) -> Sides:
    n = int(n)
    with mpmath.workdps(prec + GUARD_DIGITS):
        t = to_mpf(tau)
        lhs = _exact(t ** (2 * n - 1) / mpmath.sinh(mpmath.pi * t), prec)
    inner = _bessel_x_integral(gen_p(n), t, True, True, prec, tol)
    rhs = inner * ((-1) ** n) / _pi(prec)
    return lhs, rhs


def _eq1_27(prec, tol, n=1) -> Sides:
    n = int(n)
    r = _poly_mp(_div_x(gen_p(n)), prec)
    with _mp_lock, mpmath.workdps(prec + GUARD_DIGITS):
        lhs = integrate(lambda x: mpmath.exp(-2 * x) * r(x), 0, mpmath.inf, prec)
    exact = Fraction(4**n - 1, 4 ** (n - 1)) * (-1) ** n * fact(2 * n - 1) * Fraction(zeta_even_ratio(n))
    return lhs, _exact(exact, prec)


def _odd_zeta_rhs(n: int, prec: int) -> NumReal:
    # (-1)^n (2n)! (2^(2n+1) - 1) zeta(2n+1) / (2 pi)^(2n)
    z = zeta(2 * n + 1, prec)
    scale = (-1) ** n * fact(2 * n) * (2 ** (2 * n + 1) - 1)
    return z * scale / _pow(_pi(prec) * 2, 2 * n)


def _pow(x: NumReal, k: int) -> NumReal:
    out = NumReal.exact(1, x.prec)
    for _ in range(k):
        out = out * x
    return out


def _eq1_28(prec, tol, n=1) -> Sides:
    n = int(n)
    return _tau_integral(n, 1, prec, tol), _odd_zeta_rhs(n, prec)


def _eq3_1(prec, tol, n=1) -> Sides:
    n = int(n)
    outer, inner = _nested_eps(tol)
    p = gen_p(n)
    with _mp_lock, mpmath.workdps(prec + GUARD_DIGITS):
        f = lambda t: kl_real_transform(p, t, prec, rel_eps=inner, abs_eps=inner).value
        lhs = integrate(f, 0, 1, prec, rel_eps=outer, abs_eps=outer)
    return lhs, _odd_zeta_rhs(n, prec)


def _eq3_2(prec, tol, n=1, t=0.25) -> Sides:
    n = int(n)
    tt = Fraction(str(t))
    with mpmath.workdps(prec + GUARD_DIGITS):
        lhs = _exact(bernoulli_poly(2 * n + 1)((1 - tt) / 2), prec)
        sin = _exact(mpmath.sin(mpmath.pi * to_mpf(tt)), prec)
    inner = _bessel_x_integral(gen_p(n), to_mpf(tt), False, False, prec, tol)
    rhs = inner * sin * Fraction(-(2 * n + 1), 2 ** (2 * n + 1)) / _pi(prec)
    return lhs, rhs


def _eq3_4(prec, tol, n=1) -> Sides:
    n = int(n)
    b = _poly_mp(bernoulli_poly(2 * n + 1), prec)
    with _mp_lock, mpmath.workdps(prec + GUARD_DIGITS):
        pi = mpmath.pi
        rhs = integrate(lambda t: b((1 - t) / 2) / mpmath.sin(pi * t), 0, 1, prec)
    z = zeta(2 * n + 1, prec)
    scale = (-1) ** (n + 1) * fact(2 * n + 1) * (2 - Fraction(1, 4**n))
    lhs = z * scale / _pow(_pi(prec) * 2, 2 * n + 1)
    return lhs, rhs


def _eq3_5(prec, tol, n=1) -> Sides:
    n = int(n)
    b = _poly_mp(bernoulli_poly(2 * n), prec)
    with _mp_lock, mpmath.workdps(prec + GUARD_DIGITS):
        pi = mpmath.pi
        rhs = integrate(lambda t: b(t) * mpmath.log(mpmath.cot(pi * t)), 0, mpf(1) / 2, prec)
    z = zeta(2 * n + 1, prec)
    scale = (-1) ** (n + 1) * fact(2 * n) * (2 - Fraction(1, 4**n)) / Fraction(2 ** (2 * n + 1))
    lhs = z * scale / _pow(_pi(prec), 2 * n)
    return lhs, rhs


def _eq3_7(prec, tol, n=1) -> Sides:
    n = int(n)
    pi = _pi(prec)
    if n == 1:
        # printed form: (7/2) zeta(3) + I_2 = 2 pi G
        return zeta(3, prec) * Fraction(7, 2) + moment_I(2, prec), pi * const_catalan(prec) * 2
    if n == 2:
        # printed form: I_4 - (93/2) zeta(5) = 2 pi (I_3 - pi^2 G)
        lhs = moment_I(4, prec) - zeta(5, prec) * Fraction(93, 2)
        rhs = pi * 2 * (moment_I(3, prec) - pi * pi * const_catalan(prec))
        return lhs, rhs
    lhs = zeta(2 * n + 1, prec) * ((-1) ** (n + 1) * fact(2 * n + 1) * (1 - Fraction(1, 2 ** (2 * n + 1))))
    lhs = lhs + moment_I(2 * n, prec) * Fraction(2 * n + 1, 2)
    rhs = NumReal.exact(0, prec)
    for m in range(n):
        j = n - m
        c = binomial(2 * n + 1, 2 * m + 1) * bernoulli_number(2 * j) * (4**j - 1)
        im = const_catalan(prec) * 2 if m == 0 else moment_I(2 * m + 1, prec)
        rhs = rhs + _pow(pi, 2 * j - 1) * im * c
    return lhs, rhs


def _eq3_8(prec, tol, n=1) -> Sides:
    n = int(n)
    b = _poly_mp(bernoulli_poly(2 * n), prec)
    with _mp_lock, mpmath.workdps(prec + GUARD_DIGITS):
        pi = mpmath.pi
        rhs = integrate(lambda t: b(t) * mpmath.log(mpmath.sin(pi * t)), 0, 1, prec, points=[mpf(1) / 2])
    lhs = zeta(2 * n + 1, prec) * ((-1) ** n * fact(2 * n)) / _pow(_pi(prec) * 2, 2 * n)
    return lhs, rhs


def _eq3_9(prec, tol, n=1) -> Sides:
    n = int(n)
    pi = _pi(prec)
    if n == 1:
        # printed form: (21/8) zeta(3) + M_3 = (3 pi^2 / 4) log 2
        return zeta(3, prec) * Fraction(21, 8) + moment_M(3, prec), pi * pi * _log2(prec) * Fraction(3, 4)
    lhs = zeta(2 * n + 1, prec) * ((-1) ** (n + 1) * fact(2 * n + 2) * Fraction(1, 2 ** (2 * n + 1)))
    lhs = lhs + moment_M(2 * n + 1, prec) * (n + 1)
    rhs = NumReal.exact(0, prec)
    for m in range(n + 1):
        j = n - m
        c = binomial(2 * n + 2, 2 * m + 2) * bernoulli_number(2 * j)
        rhs = rhs + _pow(pi, 2 * j) / pi * moment_M(2 * m + 2, prec) * c
    return lhs, rhs


def _thm5(prec, tol, alpha=2.5, sign="derived") -> Sides:
    """Odd branch sign: combining the tau^(2n-1)/sinh(pi tau) relation with the
    Mellin integral of 1/sinh gives (-1)^(([alpha]+1)/2); sign="printed" uses
    (-1)^(([alpha]-1)/2) instead, which flips the right side."""
    if sign not in ("derived", "printed"):
        raise ValueError("sign must be 'derived' or 'printed'")
    a = Fraction(str(alpha))
    whole = math.floor(a)
    frac = a - whole
    if a <= 1:
        raise ValueError("alpha must be > 1")
    if whole % 2 == 0:
        n, w, sign = whole // 2, frac, (-1) ** (whole // 2)
    else:
        n, w = (whole + 1) // 2, frac - 1
        sign = (-1) ** ((whole + 1) // 2 if sign == "derived" else (whole - 1) // 2)
    with mpmath.workdps(prec + GUARD_DIGITS):
        am = to_mpf(a)
        gam = _exact(mpmath.gamma(am), prec)
        pw = _exact((2 * mpmath.pi) ** (am - 1), prec)
        two = _exact(2**am - 1, prec)
    lhs = two * gam * zeta(am, prec) / pw
    rhs = _tau_integral(n, w, prec, tol) * sign
    return lhs, rhs


def _moment_values(prec, tol, which="I1") -> Sides:
    pi = _pi(prec)
    if which == "I1":
        return moment_I(1, prec), const_catalan(prec) * 2
    if which == "M2":
        return moment_M(2, prec), pi * _log2(prec)
    if which == "M4":
        rhs = _pow(pi, 3) * _log2(prec) / 2 - pi * zeta(3, prec) * Fraction(9, 4)
        return moment_M(4, prec), rhs
    raise ValueError(f"unknown moment {which!r}")


NUMERIC_REGISTRY: Dict[str, NumericCheck] = {
    c.id: c
    for c in [
        NumericCheck("eq1_25", _eq1_25, ({"n": 1, "tau": 0.5}, {"n": 2, "tau": 1.0}), DOUBLE_TOL,
                     "tau^(2n-1)/sinh(pi tau) against its KL-type integral"),
        NumericCheck("eq1_27", _eq1_27, ({"n": 1}, {"n": 2}), SINGLE_TOL,
                     "int e^(-2x) p_n dx/x against the exact even zeta ratio"),
        NumericCheck("eq1_28", _eq1_28, ({"n": 1}, {"n": 2}), DOUBLE_TOL,
                     "odd zeta values from the tau-weighted imaginary-order double integral"),
        NumericCheck("eq3_1", _eq3_1, ({"n": 1}, {"n": 2}), DOUBLE_TOL,
                     "odd zeta values from the real-order double integral over t in (0,1)"),
        NumericCheck("eq3_2", _eq3_2, ({"n": 1, "t": 0.25}, {"n": 1, "t": 0.5}), DOUBLE_TOL,
                     "B_(2n+1)((1-t)/2) from int K_t e^(-x) p_n dx"),
        NumericCheck("eq3_4", _eq3_4, ({"n": 1},), SINGLE_TOL,
                     "int_0^1 B_(2n+1)((1-t)/2) / sin(pi t) dt"),
        NumericCheck("eq3_5", _eq3_5, ({"n": 1},), SINGLE_TOL,
                     "int_0^(1/2) B_2n(t) log cot(pi t) dt"),
        NumericCheck("eq3_7", _eq3_7, ({"n": 1}, {"n": 2}, {"n": 3}), SINGLE_TOL,
                     "odd zeta values through the moments I_n"),
        NumericCheck("eq3_8", _eq3_8, ({"n": 1}, {"n": 2}), SINGLE_TOL,
                     "int_0^1 B_2n(t) log sin(pi t) dt"),
        NumericCheck("eq3_9", _eq3_9, ({"n": 1}, {"n": 2}), SINGLE_TOL,
                     "odd zeta values through the moments M_n"),
        NumericCheck("thm5", _thm5, ({"alpha": 2.5}, {"alpha": 3.5}), DOUBLE_TOL,
                     "zeta(alpha) from the fractional-power tau integral, both parities",
                     probes=({"alpha": 3}, {"alpha": 3.5, "sign": "printed"})),
        NumericCheck("moment_values", _moment_values, ({"which": "I1"}, {"which": "M2"}, {"which": "M4"}),
                     SINGLE_TOL, "I_1 = 2G, M_2 = pi log 2, M_4 closed form"),
    ]
}


def numeric_ids() -> List[str]:
    return list(NUMERIC_REGISTRY)


def verify_numeric(check_id: str, params: Optional[dict] = None, prec: int = 30, tol: Optional[float] = None,
                   *, asserted: bool = True) -> QuadResult:
    """Evaluate one registry check at one parameter set."""
    check = NUMERIC_REGISTRY.get(check_id)
    if check is None:
        raise UnknownNumericCheckError(check_id)
    prec = _check_prec(prec)
    params = dict(check.default_params[0] if params is None else params)
    tol = check.tol if tol is None else float(tol)
    try:
        lhs, rhs = check.compute(prec, tol, **params)
    except QuadratureError as exc:
        return QuadResult.failure(check_id, params, prec, tol, f"quadrature: {exc}", asserted)
    return QuadResult.compare(check_id, params, lhs, rhs, prec, tol, asserted)


def run_numeric(ids=None, prec: int = 30, tol: Optional[float] = None, *, probes: bool = False) -> List[QuadResult]:
    """All default parameter sets of the selected checks, in registry order."""
    selected = numeric_ids() if ids is None else list(ids)
    for i in selected:
        if i not in NUMERIC_REGISTRY:
            raise UnknownNumericCheckError(i)
    out = []
    for i in selected:
        check = NUMERIC_REGISTRY[i]
        for params in check.default_params:
            out.append(verify_numeric(i, params, prec, tol))
        if probes:
            for params in check.probes:
                out.append(verify_numeric(i, params, prec, tol, asserted=False))
    return out

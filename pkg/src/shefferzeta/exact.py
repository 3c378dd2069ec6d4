"""Exact scalars, dense polynomials and truncated series in t^2.

Scalars are ``int`` or :class:`fractions.Fraction`; a Fraction whose
denominator is 1 is stored as ``int`` so that integer-valued data stays on the
fast path.  Every container here is immutable and canonical, so equality is
plain coefficient-tuple equality.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "Scalar",
    "InconsistencyError",
    "normalize",
    "to_fraction",
    "format_rational",
    "parse_rational",
    "binomial",
    "fact",
    "double_factorial_odd",
    "Poly",
    "X",
    "poly_arith",
    "poly_derivative",
    "poly_eval",
    "Biseries",
    "biseries_exp",
    "biseries_mul",
    "biseries_div",
    "exp_moment",
    "exp_moment_div_x",
]


class InconsistencyError(ArithmeticError):
    """An exact computation produced a value its construction rules out."""


def normalize(v: Scalar) -> Scalar:
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, int):
        return int(v)
    if isinstance(v, Rational):
        return normalize(Fraction(v.numerator, v.denominator))
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


def to_fraction(v: Scalar) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def format_rational(v: Scalar) -> str:
    """Serialize as ``"num/den"``; the denominator is omitted when it is 1."""
    return str(normalize(v))


def parse_rational(s: str) -> Scalar:
    return normalize(Fraction(s))


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("binomial needs n >= 0")
    if k < 0 or k > n:
        return 0
    return _binomial(n, k)


@lru_cache(maxsize=None)
def _binomial(n: int, k: int) -> int:
    return comb(n, k)


@lru_cache(maxsize=None)
def fact(n: int) -> int:
    return factorial(n)


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! = 1*3*5*...*(2n-1) for n >= 1."""
    if n < 1:
        raise ValueError("double_factorial_odd needs n >= 1")
    out = 1
    for j in range(1, 2 * n, 2):
        out *= j
    return out


class Poly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [normalize(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, v: Scalar) -> "Poly":
        return cls((v,))

    @classmethod
    def monomial(cls, k: int, v: Scalar = 1) -> "Poly":
        return cls([0] * k + [v])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(map(format_rational, self.coeffs))})"

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = format_rational(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{format_rational(a)}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-v for v in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([v * other for v in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Poly":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        d = to_fraction(other)
        return Poly([v / d for v in self.coeffs])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x0):
        """Horner evaluation; works for any ring element supporting * and +."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return normalize(acc) if isinstance(acc, (int, Fraction)) else acc

    def derivative(self, order: int = 1) -> "Poly":
        c = list(self.coeffs)
        for _ in range(order):
            c = [k * c[k] for k in range(1, len(c))]
        return Poly(c)

    def antiderivative(self, constant: Scalar = 0) -> "Poly":
        return Poly([constant] + [Fraction(v, 1) / (k + 1) for k, v in enumerate(self.coeffs)])

    def shift_x(self, k: int = 1) -> "Poly":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    def compose(self, q: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.coeffs)

    def to_json(self) -> list:
        return [format_rational(v) for v in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(parse_rational(s) for s in data)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


X = Poly((0, 1))


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial op {op!r}")


def poly_derivative(a: Poly) -> Poly:
    return a.derivative()


def poly_eval(a: Poly, x0: Scalar) -> Scalar:
    return a(x0)


class Biseries:
    """Series sum_{n<=N} terms[n](x) * t^(2n), truncated at t^(2N).

    Only the coefficient polynomials are stored; products and quotients drop
    everything beyond the retained order.
    """

    __slots__ = ("order", "terms")

    def __init__(self, terms: Iterable[Poly | Scalar], order: int | None = None):
        ts = [t if isinstance(t, Poly) else Poly.const(t) for t in terms]
        if order is None:
            order = len(ts) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        ts = ts[: order + 1] + [Poly()] * (order + 1 - len(ts))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", tuple(ts))

    def __setattr__(self, name, value):
        raise AttributeError("Biseries is immutable")

    @classmethod
    def scalar(cls, coeffs: Iterable[Scalar], order: int) -> "Biseries":
        return cls([Poly.const(c) for c in coeffs], order)

    @classmethod
    def one(cls, order: int) -> "Biseries":
        return cls([Poly.const(1)], order)

    def __getitem__(self, n: int) -> Poly:
        return self.terms[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Biseries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.order, self.terms))

    def __repr__(self) -> str:
        return f"Biseries(order={self.order}, terms={[str(t) for t in self.terms]})"

    def _check(self, other: "Biseries") -> int:
        if not isinstance(other, Biseries):
            raise TypeError("expected a Biseries")
        return min(self.order, other.order)

    def truncate(self, order: int) -> "Biseries":
        return Biseries(self.terms, order)

    def __add__(self, other: "Biseries") -> "Biseries":
        n = self._check(other)
        return Biseries([self.terms[k] + other.terms[k] for k in range(n + 1)], n)

    def __neg__(self) -> "Biseries":
        return Biseries([-t for t in self.terms], self.order)

    def __sub__(self, other: "Biseries") -> "Biseries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Biseries):
            return biseries_mul(self, other)
        if isinstance(other, (int, Fraction, Poly)):
            return Biseries([t * other for t in self.terms], self.order)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Biseries):
            return biseries_div(self, other)
        return NotImplemented

    def map_terms(self, fn) -> "Biseries":
        return Biseries([fn(t) for t in self.terms], self.order)

    def d_dx(self) -> "Biseries":
        return self.map_terms(Poly.derivative)

    def d_dt_over_t(self) -> "Biseries":
        """(1/t) d/dt, which keeps the result a series in t^2.

        Coefficient n of the result is 2(n+1) * terms[n+1]; the order drops by
        one because the top term has no successor.
        """
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series in t")
        return Biseries(
            [self.terms[n + 1] * (2 * (n + 1)) for n in range(self.order)], self.order - 1
        )

    def shift_t2(self) -> "Biseries":
        """Multiply by t^2 (order is kept, top term falls off)."""
        return Biseries([Poly()] + list(self.terms[: self.order]), self.order)

    def is_zero(self) -> bool:
        return not any(self.terms)

    def to_json(self) -> list:
        return [t.to_json() for t in self.terms]


def biseries_mul(a: Biseries, b: Biseries) -> Biseries:
    n = min(a.order, b.order)
    out = []
    for k in range(n + 1):
        acc = Poly()
        for i in range(k + 1):
            if a.terms[i] and b.terms[k - i]:
                acc = acc + a.terms[i] * b.terms[k - i]
        out.append(acc)
    return Biseries(out, n)


def biseries_exp(u: Biseries) -> Biseries:
    """exp(u) for u with vanishing t^0 term.

    Uses n*E_n = sum_{k=1}^{n} k*u_k*E_{n-k} (from dE/ds = u'(s) E in s = t^2),
    which reproduces sum_j u^j/j! truncated at the same order.
    """
    if u.terms[0]:
        raise ValueError("biseries_exp needs a series with zero constant term")
    e = [Poly.const(1)]
    for n in range(1, u.order + 1):
        acc = Poly()
        for k in range(1, n + 1):
            if u.terms[k]:
                acc = acc + (u.terms[k] * e[n - k]) * k
        e.append(acc / n)
    return Biseries(e, u.order)


def biseries_div(a: Biseries, b: Biseries) -> Biseries:
    b0 = b.terms[0]
    if not b0 or b0.degree != 0:
        raise ValueError("biseries_div needs a divisor whose t^0 term is a nonzero constant")
    inv = to_fraction(b0[0])
    inv = 1 / inv
    n = min(a.order, b.order)
    q: list[Poly] = []
    for k in range(n + 1):
        acc = a.terms[k]
        for i in range(1, k + 1):
            if b.terms[i]:
                acc = acc - b.terms[i] * q[k - i]
        q.append(acc * normalize(inv))
    return Biseries(q, n)


def _positive(c: Scalar) -> Fraction:
    c = to_fraction(c)
    if c <= 0:
        raise ValueError("the exponential rate c must be positive")
    return c


def exp_moment_div_x(p: Poly, c: Scalar) -> Scalar:
    """Exact value of int_0^inf exp(-c x) p(x) dx / x.

    Each monomial x^k contributes (k-1)!/c^k; p(0) must vanish or the
    integral diverges at the origin.
    """
    c = _positive(c)
    if p[0] != 0:
        raise ValueError("p(0) != 0: the integral diverges at x = 0")
    acc = Fraction(0)
    ck = Fraction(1)
    for k in range(1, len(p)):
        ck *= c
        if p[k]:
            acc += p[k] * fact(k - 1) / ck
    return normalize(acc)


def exp_moment(p: Poly, c: Scalar) -> Scalar:
    """Exact value of int_0^inf exp(-c x) p(x) dx, i.e. sum a_k k!/c^(k+1)."""
    c = _positive(c)
    acc = Fraction(0)
    ck = c
    for k in range(len(p)):
        if p[k]:
            acc += p[k] * fact(k) / ck
        ck *= c
    return normalize(acc)

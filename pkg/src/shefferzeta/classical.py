"""Bernoulli numbers, Bernoulli polynomials and Euler numbers by their classical recurrences."""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from typing import List

from .exact import Poly, Scalar, binomial, normalize

__all__ = ["bernoulli_number", "bernoulli_poly", "euler_number", "bernoulli_table", "euler_table"]

_B: List[Fraction] = [Fraction(1)]
_E2: List[int] = [1]
_lock = threading.Lock()


def bernoulli_number(n: int) -> Scalar:
    """B_n from sum_{k<n} C(n,k) B_k = 0 (n >= 2), B_0 = 1, B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(_B) <= n:
        with _lock:
            while len(_B) <= n:
                m = len(_B)
                if m >= 3 and m % 2 == 1:
                    _B.append(Fraction(0))
                    continue
                # the recurrence at index m+1 isolates B_m
                s = sum((binomial(m + 1, k) * _B[k] for k in range(m) if _B[k]), Fraction(0))
                _B.append(-s / (m + 1))
    return normalize(_B[n])


def bernoulli_table(n_max: int) -> list:
    bernoulli_number(n_max)
    return [normalize(b) for b in _B[: n_max + 1]]


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """B_n(x) = sum_k C(n,k) B_k x^(n-k)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = binomial(n, k) * bernoulli_number(k)
    return Poly(coeffs)


def euler_number(n: int) -> int:
    """E_n from sum_{k<=m} C(2m,2k) E_{2k} = 0 (m >= 1), E_0 = 1, odd ones vanish."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2:
        return 0
    m = n // 2
    if len(_E2) <= m:
        with _lock:
            while len(_E2) <= m:
                j = len(_E2)
                _E2.append(-sum(binomial(2 * j, 2 * k) * _E2[k] for k in range(j)))
    return _E2[m]


def euler_table(n_max: int) -> list:
    return [euler_number(n) for n in range(n_max + 1)]

"""Bessel functions J_l and I_l of integer order on the validated range.

``J`` uses its ascending series for small arguments and Miller's backward
recurrence (normalized by ``J_0 + 2 sum J_2k = 1``) elsewhere. ``I`` uses the
ascending series throughout: its terms are all positive, so the sum is
accurate to a few ulps relative to the value.
"""

from __future__ import annotations

import math

from ..errors import DomainError

MAX_ORDER = 20
MAX_ARG = 60.0
_SERIES_CUTOFF = 8.0


def _check(l: int, x: float) -> None:
    if int(l) != l or not 0 <= l <= MAX_ORDER:
        raise DomainError(f"order must be an integer in 0..{MAX_ORDER}, got {l!r}")
    if not 0.0 <= x <= MAX_ARG or math.isnan(x):
        raise DomainError(f"argument must lie in [0, {MAX_ARG}], got {x!r}")


def _series(l: int, x: float, sign: float) -> float:
    half = 0.5 * x
    term = half**l / math.factorial(l)
    q = sign * half * half
    total = term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + l))
        total += term
        if abs(term) <= 1e-17 * abs(total) or term == 0.0:
            return total


def _miller_j(l: int, x: float) -> float:
    start = 2 * ((int(max(l, x)) + 40 + int(3.0 * math.sqrt(max(l, x)))) // 2)
    j_next, j_cur = 0.0, 1e-30
    norm = 0.0
    out = 0.0
    for k in range(start, 0, -1):
        j_prev = (2.0 * k / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if k - 1 == l:
            out = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
        if abs(j_cur) > 1e250:
            j_cur *= 1e-250
            j_next *= 1e-250
            out *= 1e-250
            norm *= 1e-250
    norm += j_cur
    return out / norm


def bessel_J(l: int, x: float) -> float:
    """Bessel function of the first kind J_l(x), 0 <= l <= 20, 0 <= x <= 60.

    Raises:
        DomainError: outside the validated range.
    """
    _check(l, x)
    l = int(l)
    x = float(x)
    if x == 0.0:
        return 1.0 if l == 0 else 0.0
    if x <= _SERIES_CUTOFF:
        return _series(l, x, -1.0)
    return _miller_j(l, x)


def bessel_I(l: int, x: float) -> float:
    """Modified Bessel function I_l(x), 0 <= l <= 20, 0 <= x <= 60.

    Raises:
        DomainError: outside the validated range.
    """
    _check(l, x)
    l = int(l)
    x = float(x)
    if x == 0.0:
        return 1.0 if l == 0 else 0.0
    return _series(l, x, 1.0)


def bessel_J_prime(l: int, x: float) -> float:
    """Derivative of J_l with respect to x."""
    if l == 0:
        return -bessel_J(1, x)
    return 0.5 * (bessel_J(l - 1, x) - bessel_J(l + 1, x))


def bessel_I_prime(l: int, x: float) -> float:
    """Derivative of I_l with respect to x."""
    if l == 0:
        return bessel_I(1, x)
    return 0.5 * (bessel_I(l - 1, x) + bessel_I(l + 1, x))

"""Bracketed scalar root finding (Brent's zeroin)."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from ..errors import BracketError, PolywidthError

_EPS = np.finfo(float).eps
MIN_TOL = 1e-14
MAX_ITER = 200


def brent_root(f: Callable[[float], float], a: float, b: float, tol: float = 1e-14) -> float:
    """Find a root of ``f`` in ``[a, b]`` by Brent's method.

    Combines bisection, secant steps and inverse quadratic interpolation.
    On return the final bracket is no wider than ``tol + 4 eps |x|``.

    Raises:
        BracketError: if ``f(a)`` and ``f(b)`` do not differ in sign.
        ValueError: if ``tol`` is below 1e-14.
    """
    if tol < MIN_TOL:
        raise ValueError(f"tol must be >= {MIN_TOL}, got {tol!r}")
    a, b = float(a), float(b)
    fa, fb = float(f(a)), float(f(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise BracketError(f"no sign change on [{a!r}, {b!r}]: f(a)={fa!r}, f(b)={fb!r}")

    c, fc = a, fa
    d = e = b - a
    for _ in range(MAX_ITER):
        if np.sign(fb) == np.sign(fc):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * tol
        m = 0.5 * (c - b)
        if abs(m) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol1 else (tol1 if m > 0 else -tol1)
        fb = float(f(b))
    raise PolywidthError(f"brent_root did not converge in {MAX_ITER} iterations")


def scan_brackets(f: Callable[[float], float], lo: float, hi: float, step: float) -> list[tuple[float, float]]:
    """Return consecutive grid intervals of ``[lo, hi]`` on which ``f`` changes sign."""
    grid = np.arange(lo, hi + 0.5 * step, step)
    vals = [float(f(x)) for x in grid]
    out = []
    for x0, x1, v0, v1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if v0 == 0.0 or np.sign(v0) != np.sign(v1):
            out.append((float(x0), float(x1)))
    return out

"""Closed-form and root-finding reference values, independent of the Galerkin solvers."""

from __future__ import annotations

import math
from fractions import Fraction

from .numkernel.bessel import bessel_I, bessel_I_prime, bessel_J, bessel_J_prime
from .numkernel.roots import brent_root, scan_brackets


def neumann_eigenvalue(j: int) -> float:
    """``(pi j)^2``: positive eigenvalues of ``-u'' = lambda u`` with ``u'(0) = u'(1) = 0``."""
    return (math.pi * j) ** 2


def beam_root(j: int) -> float:
    """j-th positive root of ``cos k cosh k = 1`` (free-free beam), j >= 1.

    The equation is rewritten as ``cos k - 1/cosh k = 0`` to keep it bounded;
    the root lies within 0.1 of ``(j + 1/2) pi``.
    """
    f = lambda k: math.cos(k) - 1.0 / math.cosh(k)
    c = (j + 0.5) * math.pi
    return float(brent_root(f, c - 0.1 * math.pi, c + 0.1 * math.pi))


def beam_eigenvalue(j: int) -> float:
    return beam_root(j) ** 4


def clamped_plate_roots(l: int, count: int, k_max: float = 40.0) -> list[float]:
    """First ``count`` roots of ``J_l(k) I_l'(k) - I_l(k) J_l'(k) = 0`` (clamped plate, mode l).

    The determinant is divided by ``I_l(k)`` so that its size stays moderate.
    """
    def f(k):
        return bessel_J(l, k) * bessel_I_prime(l, k) / bessel_I(l, k) - bessel_J_prime(l, k)

    brackets = scan_brackets(f, 0.5, k_max, 0.05)
    if len(brackets) < count:
        raise ValueError(f"only {len(brackets)} roots below {k_max} for l={l}")
    return [float(brent_root(f, a, b)) for a, b in brackets[:count]]


def monomial_residual_norm_sq(l: int, m: int) -> Fraction:
    """Exact ``int_0^1 (r^(l+2m) - projection)^2 r dr`` after removing lower monomials of the mode.

    Computed as a ratio of Gram determinants of the Hilbert-like matrix
    ``1/(2l + 2i + 2j + 2)``.
    """
    def gram(n):
        return [[Fraction(1, 2 * l + 2 * i + 2 * j + 2) for j in range(n)] for i in range(n)]

    def det(a):
        a = [row[:] for row in a]
        n = len(a)
        out = Fraction(1)
        for c in range(n):
            piv = next(r for r in range(c, n) if a[r][c] != 0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                out = -out
            out *= a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return out

    return det(gram(m + 1)) / det(gram(m)) if m else Fraction(1, 2 * l + 2)


def witness_slope(l: int, M: int) -> float:
    """L2(B) norm of ``r^(l+2M) cos(l theta)`` minus its projection on lower monomials of the mode."""
    ang = 2.0 * math.pi if l == 0 else math.pi
    return math.sqrt(float(monomial_residual_norm_sq(l, M)) * ang)

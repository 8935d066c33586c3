"""Orthonormal polynomials on [0, 1] for the weight ``scale * s**beta``.

These are shifted Jacobi polynomials P_n^(0, beta)(2s - 1), normalized; for
``beta = 0`` they are the orthonormal shifted Legendre polynomials. All
operator matrices are generated from the three-term recurrence

    s q_n = b_{n+1} q_{n+1} + a_n q_n + b_n q_{n-1},

so no quadrature enters them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .quadrature import gauss_legendre


@dataclass(frozen=True)
class OrthoFamily:
    """Orthonormal polynomial family for ``w(s) = scale * s**beta`` on [0, 1].

    Attributes:
        beta: Non-negative integer exponent of the weight.
        scale: Positive constant factor of the weight.
        size: Number of polynomials q_0 .. q_{size-1}.
    """

    beta: int
    scale: float
    size: int

    @cached_property
    def _recurrence(self) -> tuple[np.ndarray, np.ndarray]:
        beta = float(self.beta)
        n_max = self.size + 1
        a = np.empty(n_max + 1)
        b = np.zeros(n_max + 2)
        for n in range(n_max + 1):
            tot = 2 * n + beta
            ax = beta / (beta + 2.0) if n == 0 else beta * beta / (tot * (tot + 2.0))
            a[n] = 0.5 * (1.0 + ax)
        for n in range(1, n_max + 2):
            tot = 2 * n + beta
            bx2 = 4.0 * n * n * (n + beta) * (n + beta) / (tot * tot * (tot + 1.0) * (tot - 1.0))
            b[n] = 0.5 * math.sqrt(bx2)
        return a, b

    @property
    def q0(self) -> float:
        """Value of the constant polynomial q_0."""
        return math.sqrt((self.beta + 1.0) / self.scale)

    def values(self, s) -> np.ndarray:
        """Matrix ``V[i, n] = q_n(s_i)``."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        a, b = self._recurrence
        out = np.empty((s.size, self.size))
        out[:, 0] = self.q0
        if self.size > 1:
            out[:, 1] = (s - a[0]) * out[:, 0] / b[1]
        for n in range(1, self.size - 1):
            out[:, n + 1] = ((s - a[n]) * out[:, n] - b[n] * out[:, n - 1]) / b[n + 1]
        return out

    @cached_property
    def values_at_one(self) -> np.ndarray:
        v = self.values(1.0)[0]
        v.setflags(write=False)
        return v

    @cached_property
    def multiplication_matrix(self) -> np.ndarray:
        """Tridiagonal matrix of ``h(s) -> s h(s)``, truncated to the family."""
        a, b = self._recurrence
        n = self.size
        m = np.diag(a[:n]) + np.diag(b[1:n], 1) + np.diag(b[1:n], -1)
        m.setflags(write=False)
        return m

    @cached_property
    def derivative_matrix(self) -> np.ndarray:
        """Strictly upper-triangular matrix of ``d/ds`` in coefficient space.

        Column n+1 follows from differentiating the recurrence:
        ``b_{n+1} q'_{n+1} = q_n + (s - a_n) q'_n - b_n q'_{n-1}``.
        """
        a, b = self._recurrence
        n = self.size
        # one extra row keeps s * q'_n exact before truncation
        s_mat = np.diag(a[: n + 1]) + np.diag(b[1 : n + 1], 1) + np.diag(b[1 : n + 1], -1)
        d = np.zeros((n + 1, n))
        for k in range(n - 1):
            col = s_mat @ d[:, k] - a[k] * d[:, k]
            col[k] += 1.0
            if k > 0:
                col -= b[k] * d[:, k - 1]
            d[:, k + 1] = col / b[k + 1]
        d = d[:n].copy()
        d.setflags(write=False)
        return d

    def gauss_rule(self, degree: int) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights on [0, 1] integrating ``w(s) * poly`` exactly up to ``degree``.

        The point count is ``ceil((deg_total + 1) / 2) + 2`` with
        ``deg_total = degree + beta``.
        """
        total = degree + self.beta
        npts = -(-(total + 1) // 2) + 2
        rule = gauss_legendre(npts)
        s, w = rule.on_interval(0.0, 1.0)
        return s, w * self.scale * s**self.beta

    def project(self, f, degree: int | None = None) -> np.ndarray:
        """Coefficients of the orthogonal projection of ``f`` onto the family.

        Exact (up to rounding) when ``f`` is a polynomial of degree <= ``degree``.
        """
        degree = 2 * self.size if degree is None else degree
        s, w = self.gauss_rule(degree + self.size - 1)
        return (self.values(s).T * w) @ np.asarray(f(s), dtype=float)

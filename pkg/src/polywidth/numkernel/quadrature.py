"""Gauss-Legendre quadrature on [-1, 1]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SizeError

MAX_POINTS = 512


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights of a rule on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def on_interval(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Return (nodes, weights) affinely mapped to [a, b]."""
        half = 0.5 * (b - a)
        return a + half * (self.nodes + 1.0), half * self.weights

    def integrate(self, f, a: float = -1.0, b: float = 1.0) -> float:
        x, w = self.on_interval(a, b)
        return float(np.dot(w, f(x)))


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(n: int) -> QuadratureRule:
    """Return the n-point Gauss-Legendre rule, nodes strictly increasing.

    Roots of P_n are found by Newton iteration on the three-term
    recurrence, started from the Tricomi-type guesses
    ``cos(pi (i - 1/4) / (n + 1/2))``; the rule is then symmetrized.

    Raises:
        SizeError: if ``n`` is not in ``1..512``.
    """
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_POINTS:
        raise SizeError(f"quadrature size must be in 1..{MAX_POINTS}, got {n!r}")
    n = int(n)
    if n == 1:
        return QuadratureRule(np.array([0.0]), np.array([2.0]))

    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    # x is decreasing; enforce exact antisymmetry of nodes and symmetry of weights
    x = x[::-1]
    w = w[::-1]
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    if n % 2 == 1:
        x[n // 2] = 0.0
    return QuadratureRule(x, w)

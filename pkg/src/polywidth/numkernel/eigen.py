"""Symmetric-definite generalized eigensolver: Cholesky reduction + cyclic Jacobi.

The Jacobi sweep uses a round-robin (tournament) ordering, so each of the
``n - 1`` rounds applies ``n // 2`` disjoint rotations at once. The order is
fixed, hence the output is bit-reproducible for identical input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_triangular

from ..errors import DecompositionError, ShapeError

MAX_SWEEPS = 50
DENSE_ROTATION_MAX = 48
SYMMETRY_TOL = 1e-12
# off-diagonal a_pq is left alone once |a_pq| <= ROTATION_TOL * sqrt(|a_pp a_qq|)
ROTATION_TOL = 1e-15
OFF_NORM_TOL = 1e-13
SIGN_TOL = 1e-12
TIE_TOL = 1e-12


@dataclass(frozen=True)
class GalerkinPair:
    """A symmetric stiffness matrix and a symmetric positive-definite mass matrix."""

    stiffness: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        k = np.array(self.stiffness, dtype=float)
        m = np.array(self.mass, dtype=float)
        if k.ndim != 2 or k.shape[0] != k.shape[1] or k.shape != m.shape:
            raise ShapeError(f"stiffness {k.shape} and mass {m.shape} must be equal square shapes")
        for name, a in (("stiffness", k), ("mass", m)):
            scale = max(float(np.max(np.abs(a))), np.finfo(float).tiny)
            if np.max(np.abs(a - a.T)) > SYMMETRY_TOL * scale:
                raise ShapeError(f"{name} matrix is not symmetric")
        k.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "stiffness", k)
        object.__setattr__(self, "mass", m)

    @property
    def dim(self) -> int:
        return self.stiffness.shape[0]


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and mass-orthonormal eigenvectors (as columns)."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def __post_init__(self):
        self.values.setflags(write=False)
        self.vectors.setflags(write=False)


def cholesky(m: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L L^T = m.

    Raises:
        DecompositionError: if a pivot is not positive; ``pivot`` holds its index.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    lower = np.zeros_like(m)
    for j in range(n):
        row = lower[j, :j]
        d = m[j, j] - row @ row
        if not d > 0.0 or not np.isfinite(d):
            raise DecompositionError(
                f"mass matrix is not positive definite: pivot {j} = {d!r}", pivot=j
            )
        ljj = np.sqrt(d)
        lower[j, j] = ljj
        if j + 1 < n:
            lower[j + 1 :, j] = (m[j + 1 :, j] - lower[j + 1 :, :j] @ row) / ljj
    return lower


@lru_cache(maxsize=64)
def _tournament(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # circle method; a dummy player pads odd n
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if max(a, b) < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        order = np.argsort(ps, kind="stable")
        p_idx = np.array(ps, dtype=np.intp)[order]
        q_idx = np.array(qs, dtype=np.intp)[order]
        p_idx.setflags(write=False)
        q_idx.setflags(write=False)
        rounds.append((p_idx, q_idx))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def jacobi_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Returns the unsorted diagonal, the accumulated orthogonal matrix and the
    number of sweeps used.

    Raises:
        DecompositionError: if convergence needs more than ``MAX_SWEEPS`` sweeps.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    vt = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), vt, 0
    rounds = _tournament(n)
    fro = np.linalg.norm(a)
    tiny = np.finfo(float).tiny
    for sweep in range(1, MAX_SWEEPS + 1):
        rotated = False
        for p, q in rounds:
            apq = a[p, q]
            app = a[p, p]
            aqq = a[q, q]
            active = np.abs(apq) > np.maximum(ROTATION_TOL * np.sqrt(np.abs(app * aqq)), tiny)
            if not active.any():
                continue
            rotated = True
            if not active.all():
                p, q = p[active], q[active]
                apq, app, aqq = apq[active], app[active], aqq[active]
            theta = (aqq - app) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 0.0, theta)
            t = np.where(
                big,
                0.5 / np.where(big, theta, 1.0),
                np.copysign(1.0, safe) / (np.abs(safe) + np.sqrt(1.0 + safe * safe)),
            )
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            if n <= DENSE_ROTATION_MAX:
                # small matrices: one dense rotation per round is cheaper than indexing
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vt = rot.T @ vt
                continue

            # J^T A J as two row rotations: rows of A, then rows of the transpose
            for _ in range(2):
                rp = a[p, :]
                rq = a[q, :]
                a[p, :] = c[:, None] * rp - s[:, None] * rq
                a[q, :] = s[:, None] * rp + c[:, None] * rq
                a = np.ascontiguousarray(a.T)
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = 0.0
            a[q, p] = 0.0

            vp = vt[p, :]
            vq = vt[q, :]
            vt[p, :] = c[:, None] * vp - s[:, None] * vq
            vt[q, :] = s[:, None] * vp + c[:, None] * vq
        if not rotated:
            off = np.linalg.norm(a - np.diag(a.diagonal()))
            if off > OFF_NORM_TOL * max(fro, tiny):
                raise DecompositionError(f"Jacobi stalled with off-diagonal norm {off!r}")
            return a.diagonal().copy(), np.ascontiguousarray(vt.T), sweep
    raise DecompositionError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")


def _order(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    order = list(np.argsort(values, kind="stable"))
    # inside clusters of equal eigenvalues, order by position of the dominant coefficient
    lead = np.argmax(np.abs(vectors), axis=0)
    out = []
    i = 0
    while i < len(order):
        j = i + 1
        while j < len(order):
            lo, hi = values[order[i]], values[order[j]]
            if hi - lo > TIE_TOL * max(1.0, abs(lo), abs(hi)):
                break
            j += 1
        cluster = order[i:j]
        out.extend(sorted(cluster, key=lambda k: (lead[k], k)))
        i = j
    return np.array(out, dtype=np.intp)


def fix_signs(vectors: np.ndarray, tol: float = SIGN_TOL) -> np.ndarray:
    """Flip columns so the first coefficient with magnitude > tol is positive."""
    vectors = np.array(vectors, dtype=float)
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        big = np.flatnonzero(np.abs(col) > tol)
        if big.size and col[big[0]] < 0:
            vectors[:, k] = -col
    return vectors


def sym_generalized_eig(pair: GalerkinPair) -> EigenDecomposition:
    """Solve ``K v = lambda M v`` for a symmetric-definite pencil.

    ``M = L L^T`` is factored, ``L^-1 K L^-T`` is diagonalized by Jacobi, and
    eigenvectors are mapped back with ``L^-T``, so ``V^T M V = I``.

    Raises:
        DecompositionError: if the mass is not positive definite (naming the
            pivot) or Jacobi fails to converge.
    """
    k, m = pair.stiffness, pair.mass
    n = pair.dim
    identity_mass = np.array_equal(m, np.eye(n))
    if identity_mass:
        a = k
    else:
        lower = cholesky(m)
        a = solve_triangular(lower, k, lower=True)
        a = solve_triangular(lower, a.T, lower=True)
        a = 0.5 * (a + a.T)
    values, y, sweeps = jacobi_eigh(a)
    if identity_mass:
        vectors = y
    else:
        vectors = solve_triangular(lower.T, y, lower=False)
    order = _order(values, vectors)
    values = values[order]
    vectors = fix_signs(vectors[:, order])
    return EigenDecomposition(values, vectors, sweeps)

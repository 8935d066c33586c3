"""Positive spectra of ``a(u, v) = <T u, T v>`` through the compliance pencil.

Both discretizations in this package have the same structure: in an
orthonormal polynomial basis, the differential operator (``d^p/dt^p`` on the
interval, ``Delta^p`` in one angular mode of the disk) is a matrix ``T`` whose
first ``p`` columns vanish (the kernel) and whose block ``T1 = T[:R-p, p:]``
is upper triangular and invertible.

The stiffness ``T^T T`` spans roughly ``(degree)^(4p)`` orders of magnitude, so
its small eigenvalues cannot be resolved from it in double precision. Instead
the inverse ``X = T1^-1`` (an integration operator, entries of moderate size)
is formed by back substitution and the eigenvalues ``mu = 1/lambda`` of
``X X^T`` are computed. The largest ``mu`` (smallest ``lambda``) then carry
full relative accuracy, and the eigenvectors are orthonormal in coefficient
space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space, solve_triangular

from .errors import AssemblyError, DiscretizationError
from .numkernel.eigen import EigenDecomposition, GalerkinPair, fix_signs, sym_generalized_eig

# below this fraction of the largest mu, 1/mu loses digits and the Rayleigh
# quotient ||T u||^2 is used instead
RESOLVED_MU = 1e-6


@dataclass(frozen=True)
class PositiveSpectrum:
    """Ascending positive eigenvalues with orthonormal coefficient eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray
    compliance: EigenDecomposition

    def __post_init__(self):
        self.values.setflags(write=False)
        self.vectors.setflags(write=False)


def check_operator(operator: np.ndarray, null_dim: int) -> np.ndarray:
    """Validate the kernel/triangular structure of ``operator``; return ``T1``."""
    t = np.asarray(operator, dtype=float)
    r = t.shape[0]
    if t.shape != (r, r) or not 0 <= null_dim < r:
        raise AssemblyError(f"operator shape {t.shape} incompatible with null_dim {null_dim}")
    if np.any(t[:, :null_dim] != 0.0) or np.any(t[r - null_dim :, :] != 0.0):
        raise AssemblyError("operator does not annihilate the first null_dim basis functions")
    t1 = t[: r - null_dim, null_dim:]
    if np.any(np.tril(t1, -1) != 0.0) or np.any(np.diag(t1) == 0.0):
        raise AssemblyError("reduced operator block is not invertible upper triangular")
    return t1


def normalized_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def constrained_basis(constraints: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of the constraint rows.

    Raises:
        AssemblyError: if the constraint rows are linearly dependent.
    """
    b = normalized_rows(constraints)
    sv = np.linalg.svd(b, compute_uv=False)
    if sv[-1] <= 1e-10 * sv[0]:
        raise AssemblyError(f"constraint matrix is rank deficient (singular values {sv})")
    return null_space(b)


def inverse_map(operator: np.ndarray, null_dim: int, constraints: np.ndarray | None = None):
    """Matrix ``H`` whose singular values are ``1/sqrt(lambda)``, the trial basis ``Z`` and the preimage map ``G``.

    For the unconstrained problem ``Z`` spans the complement of the kernel and
    ``H = T1^-1``. With constraints ``B c = 0``, ``H = Z^T G`` where ``G``
    lifts an admissible image (coordinates in an orthonormal basis of the
    admissible images) to its constrained preimage.
    """
    t1 = check_operator(operator, null_dim)
    r = operator.shape[0]
    p = null_dim
    x = solve_triangular(t1, np.eye(r - p), lower=False)
    if constraints is None:
        z = np.zeros((r, r - p))
        z[p:, :] = np.eye(r - p)
        return x, z, z @ x
    b = normalized_rows(constraints)
    if b.shape[0] != 2 * p:
        raise AssemblyError(f"expected {2 * p} constraint rows, got {b.shape[0]}")
    b_ker, b_rest = b[:, :p], b[:, p:]
    q, rk = np.linalg.qr(b_ker, mode="complete")
    if np.min(np.abs(np.diag(rk[:p]))) <= 1e-12 * np.max(np.abs(rk)):
        raise AssemblyError("constraints do not determine the kernel component")
    image_rows = b_rest @ x
    lift = np.zeros((r, r - p))
    lift[:p, :] = -solve_triangular(rk[:p], q[:, :p].T @ image_rows, lower=False)
    lift[p:, :] = x
    admissible = null_space(q[:, p:].T @ image_rows)
    z = constrained_basis(b)
    g = lift @ admissible
    return z.T @ g, z, g


def compliance_pair(operator: np.ndarray, null_dim: int, constraints: np.ndarray | None = None):
    """Return ``(GalerkinPair(H H^T, I), Z)`` whose eigenvalues are ``1/lambda``."""
    h, z, _ = inverse_map(operator, null_dim, constraints)
    c = h @ h.T
    return GalerkinPair(0.5 * (c + c.T), np.eye(c.shape[0])), z


def positive_spectrum(operator: np.ndarray, null_dim: int, constraints: np.ndarray | None = None) -> PositiveSpectrum:
    """Positive eigenpairs of ``T^T T`` on the (constrained) trial space.

    Raises:
        AssemblyError: on a malformed operator or dependent constraints.
        DiscretizationError: if a computed eigenvalue is not positive.
    """
    h, z, g = inverse_map(operator, null_dim, constraints)
    c = h @ h.T
    dec = sym_generalized_eig(GalerkinPair(0.5 * (c + c.T), np.eye(c.shape[0])))
    mu = dec.values[::-1]
    y = dec.vectors[:, ::-1]
    if mu[0] <= 0.0:
        raise DiscretizationError("compliance operator has no positive eigenvalue")
    vecs = z @ y
    lam = np.empty_like(mu)
    resolved = mu >= RESOLVED_MU * mu[0]
    lam[resolved] = 1.0 / mu[resolved]
    # for resolved pairs, rebuild the vector as the preimage G H^T y / mu (one exact
    # inverse-iteration step): its trailing coefficients are smooth, so applying
    # the stiff operator to it does not amplify rounding noise
    smooth = g @ (h.T @ y[:, resolved]) / mu[resolved]
    vecs[:, resolved] = smooth / np.linalg.norm(smooth, axis=0)
    tv = np.asarray(operator, dtype=float) @ vecs[:, ~resolved]
    lam[~resolved] = np.sum(tv * tv, axis=0)
    if np.any(lam <= 0.0) or not np.all(np.isfinite(lam)):
        raise DiscretizationError("non-positive eigenvalue in the positive spectrum")
    order = np.argsort(lam, kind="stable")
    return PositiveSpectrum(lam[order], fix_signs(vecs[:, order]), dec)


def compliance_residual(operator: np.ndarray, null_dim: int, coeffs: np.ndarray, lam: float) -> float:
    """Relative residual of ``T^T T c = lam c`` in inverse form.

    Returns ``||c_perp - lam X X^T c_perp|| / ||c||`` together with the kernel
    component, where ``c_perp`` drops the first ``null_dim`` coordinates; this
    is the eigen-equation of the unconstrained problem with the stiff operator
    replaced by its bounded inverse.
    """
    t1 = check_operator(operator, null_dim)
    c = np.asarray(coeffs, dtype=float)
    c_perp = c[null_dim:]
    y = solve_triangular(t1, c_perp, lower=False, trans="T")
    xxt_c = solve_triangular(t1, y, lower=False)
    res = np.concatenate([c[:null_dim], c_perp - lam * xxt_c])
    return float(np.linalg.norm(res) / np.linalg.norm(c))

"""Kolmogorov's eigenproblem on [0, 1] and the widths of the Sobolev ellipsoid K_p.

The eigenproblem ``(-1)^p u^(2p) = lambda u`` with ``u^(p+j)(0) = u^(p+j)(1) = 0``
(j < p) is the Euler-Lagrange system of the Rayleigh quotient
``int (u^(p))^2 / int u^2`` over unconstrained functions, so the boundary
conditions are natural: the Galerkin trial space is simply all polynomials of
degree < K, written in orthonormal shifted Legendre polynomials.

Eigenvalues are indexed with the ``p`` zero eigenvalues first, so that
``d_N(K_p) = 1/sqrt(lambda_{N+1})`` holds for ``N >= p`` and ``d_N = inf``
below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ellipsoid import EllipsoidCoords, JacksonResult, ellipsoid_membership, tail_check
from .errors import DiscretizationError, NotInEllipsoidError, RangeError, SizeError
from .galerkin import PositiveSpectrum, check_operator, positive_spectrum
from .numkernel.eigen import GalerkinPair
from .numkernel.orthopoly import OrthoFamily

MAX_P = 4
MAX_BASIS = 256
NULL_REL = 1e-8
GRAM_TOL = 1e-10


@dataclass(frozen=True)
class Problem1D:
    """Smoothness order ``p`` and number of shifted Legendre basis functions."""

    p: int
    basis_size: int

    def __post_init__(self):
        if int(self.p) != self.p or not 1 <= self.p <= MAX_P:
            raise SizeError(f"p must be in 1..{MAX_P}, got {self.p!r}")
        lo = 2 * self.p + 2
        if int(self.basis_size) != self.basis_size or not lo <= self.basis_size <= MAX_BASIS:
            raise SizeError(f"basis_size must be in {lo}..{MAX_BASIS} for p={self.p}, got {self.basis_size!r}")

    @property
    def family(self) -> OrthoFamily:
        return OrthoFamily(0, 1.0, self.basis_size)


def derivative_operator(problem: Problem1D) -> np.ndarray:
    """Exact matrix of ``d^p/dt^p`` on the orthonormal shifted Legendre basis."""
    d = problem.family.derivative_matrix
    return np.linalg.matrix_power(d, problem.p)


def assemble_1d(problem: Problem1D) -> GalerkinPair:
    """Stiffness ``int B_i^(p) B_j^(p)`` and mass ``int B_i B_j`` on [0, 1].

    Basis derivatives come from the exact derivative recurrence; the integrals
    use a Gauss rule exact for degree ``2K - 2``.

    Raises:
        SizeError: if the stiffness does not have the p-dimensional kernel of
            polynomials of degree < p.
    """
    fam = problem.family
    t, w = fam.gauss_rule(2 * problem.basis_size - 2)
    vals = fam.values(t)
    dp = derivative_operator(problem)
    zero_cols = int(np.sum(np.all(dp == 0.0, axis=0)))
    if zero_cols != problem.p:
        raise SizeError(f"stiffness rank deficiency {zero_cols} != p = {problem.p}")
    dvals = vals @ dp
    stiffness = (dvals.T * w) @ dvals
    mass = (vals.T * w) @ vals
    return GalerkinPair(0.5 * (stiffness + stiffness.T), 0.5 * (mass + mass.T))


@dataclass(frozen=True)
class Spectrum1D:
    """Discrete spectrum of the interval problem.

    Attributes:
        problem: The discretization that produced it.
        null_dim: Multiplicity of the eigenvalue 0 (equals ``p``).
        eigenvalues: Ascending, the ``null_dim`` zeros stored first as exact 0.0.
        eigenvectors: Columns of shifted-Legendre coefficients, L2(0,1)-orthonormal.
        n_trusted: Only the lowest ``basis_size // 3`` eigenvalues are physical.
    """

    problem: Problem1D
    null_dim: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    n_trusted: int
    positive: PositiveSpectrum

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def p(self) -> int:
        return self.problem.p

    @property
    def positive_eigenvalues(self) -> np.ndarray:
        return self.eigenvalues[self.null_dim :]

    def eigenfunction(self, j: int, t) -> np.ndarray:
        """Values of the j-th (1-based, zeros first) eigenfunction at ``t``."""
        return self.problem.family.values(t) @ self.eigenvectors[:, j - 1]

    def expand(self, coeffs) -> EllipsoidCoords:
        """Ellipsoid coordinates of the function with basis coefficients ``coeffs``."""
        c = np.asarray(coeffs, dtype=float)
        proj = self.eigenvectors.T @ c
        return EllipsoidCoords(proj[: self.null_dim], proj[self.null_dim :], self.positive_eigenvalues)


def solve_spectrum_1d(problem: Problem1D) -> Spectrum1D:
    """Solve the interval eigenproblem in the shifted Legendre Galerkin space.

    The kernel (polynomials of degree < p) is split off exactly; positive
    eigenvalues come from the bounded inverse of the derivative operator.

    Raises:
        DiscretizationError: if the null space found is not p-dimensional or
            the eigenvectors are not orthonormal.
    """
    p = problem.p
    dp = derivative_operator(problem)
    check_operator(dp, p)
    pos = positive_spectrum(dp, p)
    k = problem.basis_size

    vectors = np.zeros((k, k))
    vectors[:p, :p] = np.eye(p)
    vectors[:, p:] = pos.vectors
    values = np.concatenate([np.zeros(p), pos.values])

    pair = assemble_1d(problem)
    threshold = NULL_REL * max(1.0, float(pos.values[0]))
    kernel_rq = np.einsum("ij,ik,kj->j", vectors[:, :p], pair.stiffness, vectors[:, :p])
    null_dim = int(np.sum(kernel_rq < threshold)) + int(np.sum(pos.values < threshold))
    if null_dim != p:
        raise DiscretizationError(f"null space has dimension {null_dim}, expected p = {p}")
    gram = vectors.T @ pair.mass @ vectors
    if np.max(np.abs(gram - np.eye(k))) > GRAM_TOL:
        raise DiscretizationError("eigenvectors are not mass-orthonormal")
    return Spectrum1D(problem, p, values, vectors, k // 3, pos)


def kolmogorov_width_1d(spectrum: Spectrum1D, N: int) -> float:
    """``d_N(K_p)``: ``inf`` for ``N < p``, else ``1/sqrt(lambda_{N+1})``.

    Raises:
        RangeError: if ``lambda_{N+1}`` was not computed.
    """
    if N < 0:
        raise RangeError(f"N must be non-negative, got {N}")
    if N + 1 > len(spectrum.eigenvalues):
        raise RangeError(f"lambda_{N + 1} is beyond the {len(spectrum.eigenvalues)} computed eigenvalues")
    if N < spectrum.null_dim:
        return math.inf
    return 1.0 / math.sqrt(spectrum.eigenvalues[N])


@dataclass(frozen=True)
class AsymptoticRow:
    j: int
    eigenvalue: float
    ratio: float
    within_bound: bool


@dataclass(frozen=True)
class AsymptoticReport:
    """Ratios ``lambda_{p+j} / (pi^(2p) j^(2p))`` with a fitted ``|r_j - 1| <= C/j`` constant."""

    p: int
    rows: tuple[AsymptoticRow, ...]
    fitted_constant: float
    monotone: bool


def asymptotic_report(spectrum: Spectrum1D, j_max: int) -> AsymptoticReport:
    """Compare the positive eigenvalues with the leading asymptotic ``(pi j)^(2p)``.

    ``C`` is the smallest constant with ``|r_j - 1| <= C / j`` over the range;
    ``monotone`` reports whether ``|r_j - 1|`` is non-increasing in ``j``.

    Raises:
        RangeError: if ``j_max`` leaves the trusted part of the spectrum.
    """
    p = spectrum.null_dim
    if j_max < 1 or j_max > spectrum.problem.basis_size // 3 or p + j_max > len(spectrum.eigenvalues):
        raise RangeError(f"j_max={j_max} outside the trusted range 1..{spectrum.problem.basis_size // 3}")
    js = np.arange(1, j_max + 1)
    lam = spectrum.eigenvalues[p : p + j_max]
    ratios = lam / (math.pi * js) ** (2 * p)
    dev = np.abs(ratios - 1.0)
    c = float(np.max(dev * js))
    rows = tuple(
        AsymptoticRow(int(j), float(l), float(r), bool(d <= c / j + 1e-15))
        for j, l, r, d in zip(js, lam, ratios, dev)
    )
    monotone = bool(np.all(np.diff(dev) <= 0.0))
    return AsymptoticReport(p, rows, c, monotone)


def jackson_check_1d(coords: EllipsoidCoords, N: int) -> JacksonResult:
    """Truncation error after the first N axes (null axes counted first) vs ``1/sqrt(lambda_{N+1})``.

    For ``N < p`` the bound is infinite.

    Raises:
        NotInEllipsoidError: if ``sum lambda_j f_j^2 > 1``.
    """
    p = len(coords.free_coeffs)
    if N < p:
        member = ellipsoid_membership(coords)
        if not member.inside:
            raise NotInEllipsoidError(member.value)
        tail = math.sqrt(math.fsum(coords.free_coeffs[N:] ** 2) + math.fsum(coords.bound_coeffs**2))
        return JacksonResult(tail, math.inf, True)
    return tail_check(coords, N - p)

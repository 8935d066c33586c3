"""Polyharmonic eigenproblems on the unit disk by separation of variables.

A function in angular mode ``l`` is ``r^l h(r^2) Theta(theta)`` with ``Theta``
one of ``1/sqrt(2 pi)`` (l = 0), ``cos(l theta)/sqrt(pi)`` or
``sin(l theta)/sqrt(pi)``. With ``s = r^2`` the Laplacian acts on ``h`` as

    L_l h = 4 (s h'' + (l + 1) h'),

and ``int_B u v dx = int_0^1 R_u R_v r dr = 1/2 int_0^1 s^l h_u h_v ds``. The
radial profiles ``h`` are expanded in polynomials orthonormal for the weight
``s^l / 2``, so coefficient vectors are directly L2(B)-orthonormal and ``L_l``
is an exact upper-triangular matrix with ``L_l (s^m) = 4 m (m + l) s^(m-1)``.

Two problems are solved per mode:

* free: minimize ``int (Delta^p u)^2 / int u^2`` with no constraints; the
  boundary conditions ``Delta^(p+j) u = d_n Delta^(p+j) u = 0`` are natural and
  the kernel (``Delta^p u = 0``) is the p-dimensional null space ``s^m, m < p``;
* clamped: the same quotient over functions with
  ``Delta^j u(1) = d_r Delta^j u(1) = 0`` for ``j < p``.

The map ``phi -> Delta^p phi`` takes clamped eigenfunctions to free ones with
the same eigenvalue, which ``clamped_to_free_map`` checks numerically.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .ellipsoid import EllipsoidCoords, JacksonResult, Membership, tail_check
from .ellipsoid import ellipsoid_membership as _membership
from .errors import ConstructionError, DiscretizationError, DomainError, RangeError, SizeError
from .galerkin import PositiveSpectrum, compliance_residual, constrained_basis, positive_spectrum
from .numkernel.eigen import GalerkinPair
from .numkernel.orthopoly import OrthoFamily

MAX_P = 2
MAX_L = 12
MAX_RADIAL = 64
VARIANTS = ("free", "clamped")
GRAM_TOL = 1e-9
NULL_REL = 1e-8
RESIDUAL_TOL = 1e-6
ORTHO_TOL = 1e-8
NORM_TOL = 1e-6
PARSEVAL_TOL = 1e-8


@dataclass(frozen=True)
class DiskProblem:
    """Discretization of the free or clamped problem on the unit disk."""

    p: int
    l_max: int
    radial_size: int
    variant: str = "free"

    def __post_init__(self):
        if int(self.p) != self.p or not 1 <= self.p <= MAX_P:
            raise SizeError(f"p must be in 1..{MAX_P}, got {self.p!r}")
        if int(self.l_max) != self.l_max or not 0 <= self.l_max <= MAX_L:
            raise SizeError(f"l_max must be in 0..{MAX_L}, got {self.l_max!r}")
        lo = 2 * self.p + 2
        if int(self.radial_size) != self.radial_size or not lo <= self.radial_size <= MAX_RADIAL:
            raise SizeError(f"radial_size must be in {lo}..{MAX_RADIAL}, got {self.radial_size!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")


def mode_family(l: int, radial_size: int) -> OrthoFamily:
    """Orthonormal radial family for mode ``l`` (weight ``s^l / 2`` on [0, 1])."""
    return OrthoFamily(int(l), 0.5, int(radial_size))


def angular(l: int, kind: str, theta) -> np.ndarray:
    """L2(0, 2 pi)-normalized angular factor of mode ``(l, kind)``."""
    theta = np.asarray(theta, dtype=float)
    if l == 0:
        return np.full_like(theta, 1.0 / math.sqrt(2.0 * math.pi))
    if kind == "cos":
        return np.cos(l * theta) / math.sqrt(math.pi)
    if kind == "sin":
        return np.sin(l * theta) / math.sqrt(math.pi)
    raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")


def mode_kinds(l: int) -> tuple[str, ...]:
    return ("cos",) if l == 0 else ("cos", "sin")


@lru_cache(maxsize=None)
def _laplacian(l: int, radial_size: int) -> np.ndarray:
    fam = mode_family(l, radial_size)
    d = fam.derivative_matrix
    s = fam.multiplication_matrix
    lap = 4.0 * (s @ d @ d + (l + 1) * d)
    # exact zeros below the superdiagonal: L maps degree m to degree m - 1
    lap = np.triu(lap, 1)
    lap.setflags(write=False)
    return lap


def radial_laplacian_matrix(l: int, radial_size: int) -> np.ndarray:
    """Exact matrix of the Laplacian in mode ``l`` on the orthonormal radial family.

    Column ``n`` holds the coefficients of ``Delta(r^l q_n(r^2))``, divided by
    ``r^l``; it is built from the derivative and multiplication recurrences.
    """
    return _laplacian(int(l), int(radial_size)).copy()


def polyharmonic_operator(l: int, radial_size: int, p: int) -> np.ndarray:
    return np.linalg.matrix_power(_laplacian(int(l), int(radial_size)), p)


def boundary_rows(l: int, radial_size: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Rows giving ``Delta^j u(1)`` and ``d_r Delta^j u(1)`` from radial coefficients.

    For ``R = r^l h(r^2)``, ``R'(1) = l h(1) + 2 h'(1)``.
    """
    fam = mode_family(l, radial_size)
    at_one = fam.values_at_one
    tj = np.linalg.matrix_power(_laplacian(int(l), int(radial_size)), j)
    val = at_one @ tj
    der = l * val + 2.0 * (at_one @ fam.derivative_matrix) @ tj
    return val, der


def constraint_matrix(l: int, radial_size: int, p: int) -> np.ndarray:
    """The ``2p`` clamped conditions ``Delta^j u(1) = d_r Delta^j u(1) = 0``, ``j < p``."""
    rows = []
    for j in range(p):
        rows.extend(boundary_rows(l, radial_size, j))
    return np.array(rows)


def _quadrature(l: int, radial_size: int):
    fam = mode_family(l, radial_size)
    s, w = fam.gauss_rule(2 * radial_size - 2)
    return fam.values(s), w


def _mass(l: int, radial_size: int) -> np.ndarray:
    v, w = _quadrature(l, radial_size)
    m = (v.T * w) @ v
    return 0.5 * (m + m.T)


def assemble_disk(problem: DiskProblem, l: int) -> GalerkinPair:
    """Stiffness ``(Delta^p)^T M Delta^p`` and mass ``M`` for mode ``l``.

    The mass ``int_0^1 B_i B_j r dr`` is integrated by a Gauss rule exact for
    the integrand degree. The clamped variant is restricted to an orthonormal
    basis of the null space of the constraint rows.

    Raises:
        AssemblyError: if the constraint rows are linearly dependent.
        RangeError: if ``l`` exceeds ``l_max``.
    """
    _check_mode(problem, l)
    r = problem.radial_size
    t = polyharmonic_operator(l, r, problem.p)
    m = _mass(l, r)
    k = t.T @ m @ t
    if problem.variant == "clamped":
        z = constrained_basis(constraint_matrix(l, r, problem.p))
        k = z.T @ k @ z
        m = z.T @ m @ z
    return GalerkinPair(0.5 * (k + k.T), 0.5 * (m + m.T))


def _check_mode(problem: DiskProblem, l: int) -> None:
    if int(l) != l or not 0 <= l <= problem.l_max:
        raise RangeError(f"mode l={l!r} outside 0..{problem.l_max}")


@dataclass(frozen=True)
class ModeSpectrum:
    """Eigenpairs of one angular mode.

    Attributes:
        l: Angular wavenumber.
        eigenvalues: Ascending; ``null_dim`` exact zeros first.
        eigenvectors: Radial coefficient columns, L2-orthonormal.
        null_dim: ``p`` for the free variant, 0 for the clamped one.
        n_trusted: Number of positive eigenvalues treated as resolved.
    """

    l: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    null_dim: int
    n_trusted: int

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def positive_eigenvalues(self) -> np.ndarray:
        return self.eigenvalues[self.null_dim :]

    @property
    def positive_vectors(self) -> np.ndarray:
        return self.eigenvectors[:, self.null_dim :]


@dataclass(frozen=True)
class MergedEigen:
    """One positive axis of the disk ellipsoid: eigenvalue, mode, angular kind, index in mode."""

    eigenvalue: float
    l: int
    kind: str
    index: int
    trusted: bool


@dataclass(frozen=True)
class NullFunction:
    """Orthonormal polyharmonic function ``c r^l sum_m a_m r^(2m) Theta_(l,kind)``.

    ``monomials`` are the exact Gram-Schmidt coefficients ``a_m`` of
    ``r^(l+2m)``; ``radial_norm_sq`` is the exact value of ``int_0^1 R^2 r dr``
    before normalization.
    """

    l: int
    kind: str
    order: int
    monomials: tuple[Fraction, ...]
    radial_norm_sq: Fraction

    def radial(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        poly = sum(float(a) * r ** (self.l + 2 * m) for m, a in enumerate(self.monomials))
        return poly / math.sqrt(self.radial_norm_sq)

    def __call__(self, r, theta) -> np.ndarray:
        return self.radial(r) * angular(self.l, self.kind, theta)

    def coefficients(self, radial_size: int) -> np.ndarray:
        """Expansion in the orthonormal radial family of mode ``l``."""
        fam = mode_family(self.l, radial_size)
        scale = 1.0 / math.sqrt(self.radial_norm_sq)
        return fam.project(lambda s: scale * sum(float(a) * s**m for m, a in enumerate(self.monomials)),
                           degree=len(self.monomials) - 1)


def _radial_gram_schmidt(l: int, p: int) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    def inner(a, b):
        # <sum a_m r^(l+2m), sum b_n r^(l+2n)> = sum a_m b_n / (2l + 2m + 2n + 2)
        return sum(x * y * Fraction(1, 2 * l + 2 * m + 2 * n + 2)
                   for m, x in enumerate(a) for n, y in enumerate(b))

    out = []
    for k in range(p):
        v = [Fraction(0)] * p
        v[k] = Fraction(1)
        for u, nsq in out:
            c = inner(v, u) / nsq
            v = [vi - c * ui for vi, ui in zip(v, u)]
        out.append((tuple(v), inner(v, v)))
    return out


def polyharmonic_null_basis(p: int, l_max: int) -> tuple[NullFunction, ...]:
    """Orthonormal basis of ``Delta^p u = 0`` restricted to modes ``0..l_max``.

    Per mode, Gram-Schmidt runs in exact rational arithmetic over
    ``r^l, r^(l+2), ..., r^(l+2(p-1))``; only the final normalization is
    floating point. Modes ``l >= 1`` contribute a cosine and a sine copy.
    """
    if int(p) != p or p < 1 or int(l_max) != l_max or l_max < 0:
        raise SizeError(f"invalid p={p!r} or l_max={l_max!r}")
    out = []
    for l in range(l_max + 1):
        gs = _radial_gram_schmidt(l, p)
        for kind in mode_kinds(l):
            for m, (mono, nsq) in enumerate(gs):
                out.append(NullFunction(l, kind, m, mono, nsq))
    return tuple(out)


@dataclass(frozen=True)
class DiskSpectrum:
    """Per-mode spectra, the merged positive axes and the cylinder axes.

    ``merged`` lists every positive eigenpair, modes ``l >= 1`` twice (cos and
    sin), sorted by eigenvalue; ties are broken by ``(l, kind, index)``.
    """

    problem: DiskProblem
    modes: tuple[ModeSpectrum, ...]
    merged: tuple[MergedEigen, ...]
    null_basis: tuple[NullFunction, ...]

    @property
    def merged_eigenvalues(self) -> np.ndarray:
        return np.array([e.eigenvalue for e in self.merged])

    def mode(self, l: int) -> ModeSpectrum:
        _check_mode(self.problem, l)
        return self.modes[l]

    def eigenvector(self, entry: MergedEigen) -> np.ndarray:
        return self.modes[entry.l].positive_vectors[:, entry.index]


def _thread_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    cap = os.environ.get("POLYWIDTH_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"POLYWIDTH_THREADS must be an integer, got {cap!r}") from None
    return n


def solve_mode(problem: DiskProblem, l: int) -> ModeSpectrum:
    """Eigenpairs of mode ``l`` through the compliance formulation.

    Raises:
        DiscretizationError: if the null space has the wrong dimension or the
            eigenvectors fail the mass-Gram check.
    """
    _check_mode(problem, l)
    p, r = problem.p, problem.radial_size
    t = polyharmonic_operator(l, r, p)
    if problem.variant == "free":
        pos = positive_spectrum(t, p)
        null = np.zeros((r, p))
        null[:p, :p] = np.eye(p)
        vectors = np.hstack([null, pos.vectors])
        values = np.concatenate([np.zeros(p), pos.values])
        expected_null = p
    else:
        pos = positive_spectrum(t, p, constraint_matrix(l, r, p))
        vectors = pos.vectors
        values = pos.values.copy()
        expected_null = 0

    m = _mass(l, r)
    threshold = NULL_REL * max(1.0, float(pos.values[0]))
    kernel_rq = np.sum((t @ vectors[:, :expected_null]) ** 2, axis=0) if expected_null else np.zeros(0)
    null_dim = int(np.sum(kernel_rq < threshold)) + int(np.sum(pos.values < threshold))
    if null_dim != expected_null:
        raise DiscretizationError(f"mode {l}: null space of dimension {null_dim}, expected {expected_null}")
    gram = vectors.T @ m @ vectors
    if np.max(np.abs(gram - np.eye(gram.shape[0]))) > GRAM_TOL:
        raise DiscretizationError(f"mode {l}: eigenvectors are not mass-orthonormal")
    return ModeSpectrum(int(l), values, vectors, expected_null, len(pos.values) // 3 + 1)


def merge_modes(modes) -> tuple[MergedEigen, ...]:
    """Deterministic merge of per-mode positive spectra, cos/sin copies for ``l >= 1``."""
    entries = []
    for ms in modes:
        for kind in mode_kinds(ms.l):
            for i, lam in enumerate(ms.positive_eigenvalues):
                entries.append(MergedEigen(float(lam), ms.l, kind, i, i < ms.n_trusted))
    entries.sort(key=lambda e: (e.eigenvalue, e.l, e.kind, e.index))
    return tuple(entries)


def solve_disk_spectrum(problem: DiskProblem, workers: int | None = None) -> DiskSpectrum:
    """Solve every mode ``0..l_max`` (concurrently) and merge the results.

    ``workers`` defaults to the available parallelism, capped by the
    ``POLYWIDTH_THREADS`` environment variable. The output does not depend on
    the worker count.
    """
    ls = range(problem.l_max + 1)
    n = min(_thread_count(workers), len(ls))
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            modes = tuple(pool.map(lambda l: solve_mode(problem, l), ls))
    else:
        modes = tuple(solve_mode(problem, l) for l in ls)
    return DiskSpectrum(problem, modes, merge_modes(modes), polyharmonic_null_basis(problem.p, problem.l_max))


def radial_norm(l: int, coeffs: np.ndarray) -> float:
    """``sqrt(int_0^1 R^2 r dr)`` by Gauss quadrature of the profile values."""
    v, w = _quadrature(l, len(coeffs))
    return math.sqrt(float(np.sum(w * (v @ coeffs) ** 2)))


@dataclass(frozen=True)
class MappedPair:
    l: int
    index: int
    eigenvalue: float
    residual: float
    null_overlap: float
    norm_ratio_error: float
    checked: bool


@dataclass(frozen=True)
class MappedSpectrum:
    """Result of ``phi -> Delta^p phi``: a free-variant spectrum plus per-pair diagnostics."""

    spectrum: DiskSpectrum
    pairs: tuple[MappedPair, ...]


def clamped_to_free_map(clamped: DiskSpectrum, p: int, n_checked: int = 5) -> MappedSpectrum:
    """Map clamped eigenfunctions ``phi_k`` to ``psi_k = Delta^p phi_k``.

    The lowest ``n_checked`` ``psi_k`` of every mode are checked to be an eigenfunction of the free problem with
    the same eigenvalue (inverse-form residual), to be orthogonal to the
    polyharmonic functions of its mode, and to satisfy
    ``||psi_k|| = sqrt(lambda_k) ||phi_k||`` with both norms by quadrature.
    Diagnostics for higher pairs, where the two discretizations drift apart,
    are recorded but not enforced.

    Raises:
        ValueError: if ``clamped`` is not a clamped spectrum of order ``p``.
        ConstructionError: naming ``(l, k)`` when a check fails.
    """
    prob = clamped.problem
    if prob.variant != "clamped" or prob.p != p:
        raise ValueError(f"expected a clamped spectrum of order p={p}")
    r = prob.radial_size
    null_by_mode = {}
    for f in clamped.null_basis:
        if f.kind == "cos":
            null_by_mode.setdefault(f.l, []).append(f.coefficients(r))

    modes, pairs = [], []
    for ms in clamped.modes:
        t = polyharmonic_operator(ms.l, r, p)
        nulls = np.array(null_by_mode[ms.l]).T
        mapped = []
        for k, lam in enumerate(ms.eigenvalues):
            phi = ms.eigenvectors[:, k]
            psi = t @ phi
            res = compliance_residual(t, p, psi, lam)
            psi_norm = radial_norm(ms.l, psi)
            overlap = float(np.max(np.abs(nulls.T @ psi))) / psi_norm
            ratio = psi_norm / radial_norm(ms.l, phi)
            ratio_err = abs(ratio / math.sqrt(lam) - 1.0)
            checked = k < n_checked
            pairs.append(MappedPair(ms.l, k, float(lam), res, overlap, ratio_err, checked))
            if checked:
                if res > RESIDUAL_TOL:
                    raise ConstructionError(f"free eigen-residual {res:.3e} exceeds {RESIDUAL_TOL}", ms.l, k)
                if overlap > ORTHO_TOL:
                    raise ConstructionError(f"overlap {overlap:.3e} with polyharmonic functions", ms.l, k)
                if ratio_err > NORM_TOL:
                    raise ConstructionError(f"norm identity violated by {ratio_err:.3e}", ms.l, k)
            mapped.append(psi / np.linalg.norm(psi))
        null = np.zeros((r, p))
        null[:p, :p] = np.eye(p)
        vecs = np.hstack([null, np.array(mapped).T])
        vals = np.concatenate([np.zeros(p), ms.eigenvalues])
        modes.append(ModeSpectrum(ms.l, vals, vecs, p, ms.n_trusted))
    free = DiskProblem(p, prob.l_max, r, "free")
    spec = DiskSpectrum(free, tuple(modes), merge_modes(modes), clamped.null_basis)
    return MappedSpectrum(spec, tuple(pairs))


@dataclass(frozen=True)
class RadialBundle:
    """A function on the disk as radial coefficients per ``(l, kind)`` component.

    Missing components are zero. All vectors use the radial family of their
    mode with a common length.
    """

    components: dict = field(default_factory=dict)

    def __post_init__(self):
        comps = {}
        for key, c in self.components.items():
            l, kind = key
            if kind not in mode_kinds(l):
                raise ValueError(f"invalid component {key!r}")
            arr = np.array(c, dtype=float)
            arr.setflags(write=False)
            comps[(int(l), kind)] = arr
        object.__setattr__(self, "components", comps)

    def __call__(self, r, theta) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = np.zeros(np.broadcast(r, np.asarray(theta)).shape)
        for (l, kind), c in self.components.items():
            fam = mode_family(l, len(c))
            prof = (fam.values(np.ravel(r) ** 2) @ c).reshape(np.shape(r)) * r**l
            out = out + prof * angular(l, kind, theta)
        return out

    def norm_squared(self) -> float:
        """``int_B f^2`` by radial quadrature (angular parts are orthonormal)."""
        return math.fsum(radial_norm(l, c) ** 2 for (l, _), c in self.components.items())


def expand_in_eigenbasis(f: RadialBundle, spectrum: DiskSpectrum) -> EllipsoidCoords:
    """Coordinates of ``f`` on the cylinder axes (null basis) and the merged positive axes.

    Raises:
        RangeError: if ``f`` has a mode beyond ``l_max``.
        DomainError: if the spectrum is not of the free variant.
        DiscretizationError: if Parseval fails by more than 1e-8 relative.
    """
    prob = spectrum.problem
    if prob.variant != "free":
        raise DomainError("expansion needs the free spectrum: clamped eigenfunctions are not complete")
    r = prob.radial_size
    comps = {}
    for (l, kind), c in f.components.items():
        if l > prob.l_max:
            raise RangeError(f"component mode {l} beyond l_max {prob.l_max}")
        if len(c) > r:
            raise SizeError(f"component {(l, kind)} has {len(c)} > {r} radial coefficients")
        comps[(l, kind)] = np.pad(c, (0, r - len(c)))
    zero = np.zeros(r)
    free = np.array([g.coefficients(r) @ comps.get((g.l, g.kind), zero) for g in spectrum.null_basis])
    bound = np.array([spectrum.eigenvector(e) @ comps.get((e.l, e.kind), zero) for e in spectrum.merged])
    coords = EllipsoidCoords(free, bound, spectrum.merged_eigenvalues)
    total = f.norm_squared()
    if abs(coords.norm_squared - total) > PARSEVAL_TOL * max(total, 1e-300):
        raise DiscretizationError(f"Parseval defect {coords.norm_squared - total:.3e} for ||f||^2 = {total:.6g}")
    return coords


def ellipsoid_membership(coords: EllipsoidCoords) -> Membership:
    """``sum lambda_j f_j^2`` over the positive axes; the cylinder coordinates never enter."""
    return _membership(coords)


def jackson_check_disk(coords: EllipsoidCoords, N: int) -> JacksonResult:
    """Error after removing all cylinder components and the first N positive axes.

    Raises:
        NotInEllipsoidError: if the coordinates are outside the ellipsoid.
    """
    return tail_check(coords, N)


@dataclass(frozen=True)
class BoundaryTraces:
    value: float
    normal_derivative: float


def laplacian_traces(l: int, coeffs, j: int) -> BoundaryTraces:
    """``Delta^j R(1)`` and its radial derivative for a radial coefficient vector."""
    val, der = boundary_rows(l, len(coeffs), j)
    c = np.asarray(coeffs, dtype=float)
    return BoundaryTraces(float(val @ c), float(der @ c))


def natural_bc_defect(spectrum: DiskSpectrum, l: int, k: int) -> float:
    """``max(|Delta^p psi(1)|, |d_r Delta^p psi(1)|, ...) / max |Delta^p psi|`` for a free eigenfunction.

    The free problem's boundary conditions ``Delta^(p+j) psi = d_r Delta^(p+j) psi = 0``
    (``j < p``) are never imposed; this measures how well they emerge.
    """
    prob = spectrum.problem
    ms = spectrum.mode(l)
    psi = ms.positive_vectors[:, k]
    r = prob.radial_size
    lap = _laplacian(l, r)
    dp_psi = np.linalg.matrix_power(lap, prob.p) @ psi
    fam = mode_family(l, r)
    rr = np.linspace(0.0, 1.0, 2001)
    sup = float(np.max(np.abs(fam.values(rr**2) @ dp_psi * rr**l)))
    traces = []
    for j in range(prob.p):
        tr = laplacian_traces(l, dp_psi, j)
        traces.extend([abs(tr.value), abs(tr.normal_derivative)])
    return max(traces) / sup


# ---- Green's formula for Delta^p, checked on monomial data -------------------

def _monomial_laplacian(l: int, a: np.ndarray) -> np.ndarray:
    """Coefficients of ``Delta`` applied to ``r^l sum_m a_m r^(2m)`` (same monomial form)."""
    m = np.arange(len(a))
    out = np.zeros_like(a)
    out[:-1] = 4.0 * m[1:] * (m[1:] + l) * a[1:]
    return out


def _monomial_traces(l: int, a: np.ndarray) -> tuple[float, float]:
    m = np.arange(len(a))
    return float(np.sum(a)), float(np.sum((l + 2 * m) * a))


def _monomial_to_family(l: int, a: np.ndarray, radial_size: int) -> np.ndarray:
    fam = mode_family(l, radial_size)
    return fam.project(lambda s: np.polynomial.polynomial.polyval(s, a), degree=len(a) - 1)


@dataclass(frozen=True)
class GreenRow:
    l: int
    interior: float
    boundary: float
    relative_error: float


def green_boundary_sum(l: int, u: np.ndarray, v: np.ndarray, p: int) -> float:
    """Boundary side of Green's formula for ``Delta^p`` on the unit circle.

    ``sum_{j<p} [ d_n Delta^(p-1-j) u * Delta^j v - Delta^(p-1-j) u * d_n Delta^j v ]``
    for monomial coefficient vectors ``u``, ``v`` of the same angular mode.
    """
    lu = [u]
    lv = [v]
    for _ in range(p):
        lu.append(_monomial_laplacian(l, lu[-1]))
        lv.append(_monomial_laplacian(l, lv[-1]))
    total = 0.0
    for j in range(p):
        uv, ud = _monomial_traces(l, lu[p - 1 - j])
        vv, vd = _monomial_traces(l, lv[j])
        total += ud * vv - uv * vd
    return total


def green_interior(l: int, u_coeffs: np.ndarray, v_coeffs: np.ndarray, p: int) -> float:
    """``int_B (Delta^p u v - u Delta^p v)`` with the exact Laplacian matrix and Gauss quadrature."""
    r = len(u_coeffs)
    t = polyharmonic_operator(l, r, p)
    v_mat, w = _quadrature(l, r)
    uu, vv = v_mat @ u_coeffs, v_mat @ v_coeffs
    return float(np.sum(w * ((v_mat @ (t @ u_coeffs)) * vv - uu * (v_mat @ (t @ v_coeffs)))))


def green_formula_check(p: int, n_pairs: int, seed: int, l_max: int = 4, degree: int = 8) -> tuple[GreenRow, ...]:
    """Compare both sides of Green's formula for ``Delta^p`` on random radial polynomials.

    Each pair ``(u, v)`` shares a random mode ``l <= l_max`` and has standard
    normal monomial coefficients up to ``r^(l + 2 degree)``. The interior side
    goes through the orthonormal family and the Laplacian matrix; the boundary
    side uses closed-form monomial traces. The error is relative to
    ``||Delta^p u|| ||v|| + ||u|| ||Delta^p v||``.
    """
    rng = np.random.default_rng(seed)
    rows = []
    size = degree + 1
    for _ in range(n_pairs):
        l = int(rng.integers(0, l_max + 1))
        a = rng.standard_normal(size)
        b = rng.standard_normal(size)
        u = _monomial_to_family(l, a, size)
        v = _monomial_to_family(l, b, size)
        interior = green_interior(l, u, v, p)
        boundary = green_boundary_sum(l, a, b, p)
        t = polyharmonic_operator(l, size, p)
        scale = radial_norm(l, t @ u) * radial_norm(l, v) + radial_norm(l, u) * radial_norm(l, t @ v)
        rows.append(GreenRow(l, interior, boundary, abs(interior - boundary) / scale))
    return tuple(rows)

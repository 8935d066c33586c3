"""Distances and widths on the finite-coordinate model of a cylindrical ellipsoid.

Coordinates are ordered cylinder axes first (``n_free`` directions on which
the set is unbounded: polyharmonic functions) and then the ``K`` bound axes
with ``sum lambda_j f_j^2 <= 1``. Infinite distances come only from the
structural test that a cylinder axis is not contained in the subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy as sp

from .disk import mode_family
from .errors import CounterexampleError, ShapeError, SizeError, WitnessError
from .numkernel.eigen import GalerkinPair, sym_generalized_eig

ORTHO_TOL = 1e-12
CYLINDER_TOL = 1e-9
EXTREMAL_TOL = 1e-9
WITNESS_TOL = 1e-10
DEFAULT_SEED = 20240101

# rows u^j = 1, x1, x2, x1^2 - x2^2, x1 x2; columns u_x1x1, u_x1x2, u_x1, u_x2, u at the origin
DISPLAYED_JACOBI = (
    (0, 0, 0, 0, 1),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (2, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
)

SCOPE_NOTE = (
    "operators searched: the elliptic class is probed only through the transversal witness "
    "and constant rescalings c*Delta^p; general variable-coefficient operators are not searched"
)


@dataclass(frozen=True)
class TruncatedEllipsoid:
    """``n_free`` cylinder axes followed by ``K`` bound axes with eigenvalues ``lambdas``."""

    lambdas: np.ndarray
    n_free: int

    def __post_init__(self):
        lam = np.array(self.lambdas, dtype=float).ravel()
        if lam.size < 1:
            raise SizeError("need at least one bound axis")
        if not np.all(np.isfinite(lam)) or np.any(lam <= 0.0):
            raise ValueError("lambdas must be finite and positive")
        if np.any(np.diff(lam) < 0.0):
            raise ValueError("lambdas must be ascending")
        if int(self.n_free) != self.n_free or self.n_free < 0:
            raise SizeError(f"n_free must be a non-negative integer, got {self.n_free!r}")
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    @property
    def K(self) -> int:
        return self.lambdas.size

    @property
    def dim(self) -> int:
        return self.n_free + self.K

    def scaled(self, c: float) -> "TruncatedEllipsoid":
        """The ellipsoid of ``c * Delta^p``: every eigenvalue times ``c^2``."""
        return TruncatedEllipsoid(self.lambdas * c * c, self.n_free)


@dataclass(frozen=True)
class Subspace:
    """Subspace spanned by orthonormal columns."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim != 2:
            raise ShapeError("basis must be a 2-D array")
        if b.shape[1] and np.max(np.abs(b.T @ b - np.eye(b.shape[1]))) > ORTHO_TOL:
            raise ValueError("basis columns are not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def ambient(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def axes(cls, ambient: int, indices) -> "Subspace":
        idx = list(indices)
        b = np.zeros((ambient, len(idx)))
        b[idx, range(len(idx))] = 1.0
        return cls(b)

    @classmethod
    def span(cls, columns) -> "Subspace":
        """Orthonormalize full-rank columns by QR."""
        q, _ = np.linalg.qr(np.asarray(columns, dtype=float))
        return cls(q)


def extremal_subspace(ell: TruncatedEllipsoid, N: int) -> Subspace:
    """All cylinder axes plus the first ``N`` bound axes."""
    return Subspace.axes(ell.dim, range(ell.n_free + N))


def dist_to_subspace(point, sub: Subspace) -> float:
    """``||(I - B B^T) y||``.

    Raises:
        ShapeError: if the point does not live in the subspace's ambient space.
    """
    y = np.asarray(point, dtype=float)
    if y.shape != (sub.ambient,):
        raise ShapeError(f"point of shape {y.shape} in ambient dimension {sub.ambient}")
    b = sub.basis
    return float(np.linalg.norm(y - b @ (b.T @ y)))


def dist_subspace_to_ellipsoid(sub: Subspace, ell: TruncatedEllipsoid) -> float:
    """``sup_{y in ell} dist(sub, y)``, ``math.inf`` when a cylinder axis escapes ``sub``.

    For bounded cases this is ``sqrt(max f^T P f / f^T Lambda f)``, the top
    generalized eigenvalue of ``(P, diag(lambda))`` with ``P`` the
    complementary projector restricted to the bound axes.
    """
    if sub.ambient != ell.dim:
        raise ShapeError(f"subspace in dimension {sub.ambient}, ellipsoid in {ell.dim}")
    b = sub.basis
    comp = np.eye(ell.dim) - b @ b.T
    for i in range(ell.n_free):
        if np.linalg.norm(comp[:, i]) > CYLINDER_TOL:
            return math.inf
    p_bound = comp[ell.n_free :, ell.n_free :]
    dec = sym_generalized_eig(GalerkinPair(0.5 * (p_bound + p_bound.T), np.diag(ell.lambdas)))
    return math.sqrt(max(float(dec.values[-1]), 0.0))


@dataclass(frozen=True)
class WidthRow:
    N: int
    d_N: float
    method: str
    witness: str


@dataclass(frozen=True)
class WidthReport:
    """Formula and search rows; ``trial_distances`` holds every random trial in seed order."""

    rows: tuple[WidthRow, ...]
    trial_distances: tuple[float, ...]
    seed: int

    def formula(self, N: int) -> float:
        return next(r.d_N for r in self.rows if r.N == N and r.method == "formula")


def random_subspace(ell: TruncatedEllipsoid, N: int, rng: np.random.Generator) -> Subspace:
    """Cylinder axes plus a random N-dimensional subspace of the bound axes (orthonormalized Gaussian)."""
    g = rng.standard_normal((ell.K, N))
    q, _ = np.linalg.qr(g)
    b = np.zeros((ell.dim, ell.n_free + N))
    b[: ell.n_free, : ell.n_free] = np.eye(ell.n_free)
    b[ell.n_free :, ell.n_free :] = q
    return Subspace(b)


def extremality_experiment(ell: TruncatedEllipsoid, N: int, trials: int, seed: int = DEFAULT_SEED) -> WidthReport:
    """Search random N-dimensional competitors and compare with ``1/sqrt(lambda_{N+1})``.

    Raises:
        CounterexampleError: if a trial beats the formula by more than 1e-9 or
            the axis-aligned subspace misses it.
    """
    if not 0 <= N < ell.K:
        raise SizeError(f"N must be in 0..{ell.K - 1}, got {N}")
    if trials < 1:
        raise SizeError("trials must be at least 1")
    formula = 1.0 / math.sqrt(ell.lambdas[N])
    axis = extremal_subspace(ell, N)
    axis_dist = dist_subspace_to_ellipsoid(axis, ell)
    if abs(axis_dist - formula) > EXTREMAL_TOL:
        raise CounterexampleError(f"axis-aligned distance {axis_dist!r} != {formula!r}", axis.basis, axis_dist)
    rng = np.random.default_rng(seed)
    dists = []
    for _ in range(trials):
        sub = random_subspace(ell, N, rng)
        d = dist_subspace_to_ellipsoid(sub, ell)
        if d < formula - EXTREMAL_TOL:
            raise CounterexampleError(f"distance {d!r} below 1/sqrt(lambda_N+1) = {formula!r}", sub.basis, d)
        dists.append(d)
    best = int(np.argmin(dists))
    rows = (
        WidthRow(N, formula, "formula", "axis-aligned"),
        WidthRow(N, axis_dist, "search", "axis-aligned"),
        WidthRow(N, dists[best], "search", f"random-{best}"),
    )
    return WidthReport(rows, tuple(dists), seed)


def missing_cylinder_distances(ell: TruncatedEllipsoid, N: int) -> tuple[float, ...]:
    """Distance of the extremal subspace with each cylinder axis removed in turn."""
    out = []
    for i in range(ell.n_free):
        keep = [k for k in range(ell.n_free + N) if k != i]
        out.append(dist_subspace_to_ellipsoid(Subspace.axes(ell.dim, keep), ell))
    return tuple(out)


@dataclass(frozen=True)
class UnboundedDemo:
    """Distances from a polyharmonic witness ``t y`` to a lower-order proxy subspace."""

    t_values: tuple[float, ...]
    distances: tuple[float, ...]
    slope: float
    intercept: float
    witness_residual: float
    affine: bool
    conclusion: str


def unbounded_distance_demo(spectrum, M: int, t_values, l: int = 0, n_eigen: int = 6) -> UnboundedDemo:
    """Witness that ``dist(S_M + F, K_p) = inf`` when ``M < p``, on one disk mode.

    The proxy subspace is the kernel of ``Delta^M`` in mode ``l`` (monomials
    ``r^(l+2m)``, ``m < M``) plus the ``n_eigen`` lowest free eigenfunctions of
    that mode. The witness ``y = r^(l+2M) cos(l theta)`` solves
    ``Delta^p y = 0``, so every ``t y`` lies in the set; the distances grow
    linearly in ``t``, so their supremum is infinite.

    Raises:
        ValueError: if ``M >= p`` or the spectrum is not of the free variant.
        WitnessError: if the witness lies (numerically) inside the proxy.
    """
    prob = spectrum.problem
    if prob.variant != "free":
        raise ValueError("the demonstration uses the free spectrum")
    if not 0 <= M < prob.p:
        raise ValueError(f"need 0 <= M < p = {prob.p}, got M={M}")
    r = prob.radial_size
    fam = mode_family(l, r)
    ang = math.sqrt(2.0 * math.pi) if l == 0 else math.sqrt(math.pi)
    kernel = np.array([fam.project(lambda s, m=m: s**m, degree=m) for m in range(M)]).reshape(M, r).T
    y = ang * fam.project(lambda s: s**M, degree=M)
    if M:
        q, _ = np.linalg.qr(kernel)
        witness_residual = float(np.linalg.norm(y - q @ (q.T @ y)))
    else:
        witness_residual = float(np.linalg.norm(y))
    if witness_residual < WITNESS_TOL:
        raise WitnessError(f"witness residual {witness_residual:.3e} is below {WITNESS_TOL}")
    ms = spectrum.mode(l)
    proxy = Subspace.span(np.hstack([kernel, ms.positive_vectors[:, :n_eigen]]))
    ts = tuple(float(t) for t in t_values)
    dists = tuple(dist_to_subspace(t * y, proxy) for t in ts)
    slope, intercept = np.polynomial.polynomial.polyfit(ts, dists, 1)[::-1] if len(ts) > 1 else (dists[0] / ts[0], 0.0)
    affine = bool(slope > 0.1 * witness_residual and abs(intercept) <= WITNESS_TOL * max(1.0, max(map(abs, ts))))
    conclusion = (
        f"dist grows like {slope:.6g} * t without bound, so the supremum over the set is infinite"
        if affine else "distances are not affine with positive slope; no conclusion"
    )
    return UnboundedDemo(ts, dists, float(slope), float(intercept), witness_residual, affine, conclusion)


@dataclass(frozen=True)
class JacobiCheck:
    matrix: tuple[tuple[int, ...], ...]
    determinant: int
    matches_display: bool
    harmonic: tuple[bool, ...]
    nondegenerate: bool
    note: str


def jacobi_matrix_check() -> JacobiCheck:
    """Rebuild the 5x5 derivative matrix of ``1, x1, x2, x1^2 - x2^2, x1 x2`` at the origin.

    The surrounding text announces six functions ``u^j`` but lists five; the
    five listed functions and the 5x5 matrix are used as printed.
    """
    x1, x2 = sp.symbols("x1 x2")
    funcs = (sp.Integer(1), x1, x2, x1**2 - x2**2, x1 * x2)
    origin = {x1: 0, x2: 0}
    rows = []
    for u in funcs:
        cols = (sp.diff(u, x1, 2), sp.diff(u, x1, x2), sp.diff(u, x1), sp.diff(u, x2), u)
        rows.append(tuple(int(c.subs(origin)) for c in cols))
    mat = sp.Matrix(rows)
    det = int(mat.det())
    harmonic = tuple(bool(sp.simplify(sp.diff(u, x1, 2) + sp.diff(u, x2, 2)) == 0) for u in funcs)
    return JacobiCheck(
        tuple(rows), det, tuple(rows) == DISPLAYED_JACOBI, harmonic, det != 0,
        "text announces u^j for j = 1..6 but lists five functions; the five listed are used",
    )


@dataclass(frozen=True)
class PerturbationProbe:
    c: float
    widths: tuple[float, ...]
    scaled_widths: tuple[float, ...]
    max_ratio_error: float
    same_extremal: bool
    kernel_unchanged: bool
    note: str


def diagonal_perturbation_probe(ell: TruncatedEllipsoid, c: float) -> PerturbationProbe:
    """Replace ``Delta^p`` by ``c Delta^p``: same kernel and extremal subspaces, widths divided by ``c``.

    For each ``N < K`` the argmin is identified by comparing the axis-aligned
    distance against every one-axis swap; the extremal subspace is unchanged
    when the same subspace attains the minimum before and after scaling.
    """
    if not c > 0.0:
        raise ValueError(f"c must be positive, got {c!r}")
    scaled = ell.scaled(c)
    widths, swidths, same = [], [], True
    for n in range(ell.K):
        sub = extremal_subspace(ell, n)
        widths.append(dist_subspace_to_ellipsoid(sub, ell))
        swidths.append(dist_subspace_to_ellipsoid(sub, scaled))
        if n < ell.K - 1 and n > 0:
            # swap the last kept axis for the first dropped one
            alt = list(range(ell.n_free + n - 1)) + [ell.n_free + n]
            alt_sub = Subspace.axes(ell.dim, alt)
            for e in (ell, scaled):
                if dist_subspace_to_ellipsoid(alt_sub, e) < dist_subspace_to_ellipsoid(sub, e) - EXTREMAL_TOL:
                    same = False
    ratio = max(abs(s * c / w - 1.0) for w, s in zip(widths, swidths))
    return PerturbationProbe(float(c), tuple(widths), tuple(swidths), ratio, same,
                             scaled.n_free == ell.n_free, SCOPE_NOTE)


def ellipsoid_from_1d(spectrum, K: int) -> TruncatedEllipsoid:
    """Truncation of the interval ellipsoid: ``p`` cylinder axes, ``K`` trusted positive axes."""
    lam = spectrum.positive_eigenvalues
    if not 1 <= K <= min(lam.size, spectrum.n_trusted):
        raise SizeError(f"K={K} outside the trusted range 1..{min(lam.size, spectrum.n_trusted)}")
    return TruncatedEllipsoid(lam[:K], spectrum.null_dim)


def ellipsoid_from_disk(spectrum, K: int) -> TruncatedEllipsoid:
    """Truncation of the disk ellipsoid: every retained null function is a cylinder axis."""
    lam = spectrum.merged_eigenvalues
    if not 1 <= K <= lam.size:
        raise SizeError(f"K={K} outside 1..{lam.size}")
    return TruncatedEllipsoid(lam[:K], len(spectrum.null_basis))

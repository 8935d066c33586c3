"""Coordinates of a function along the principal axes of a cylindrical ellipsoid."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotInEllipsoidError, RangeError, ShapeError

MEMBERSHIP_SLACK = 1e-12
JACKSON_SLACK = 1e-12


@dataclass(frozen=True)
class EllipsoidCoords:
    """Expansion coefficients ``f = sum f'_j psi'_j + sum f_j psi_j``.

    Attributes:
        free_coeffs: Coordinates on the zero-eigenvalue (cylinder) axes.
        bound_coeffs: Coordinates on the positive-eigenvalue axes.
        eigenvalues: Positive eigenvalues aligned with ``bound_coeffs``.
    """

    free_coeffs: np.ndarray
    bound_coeffs: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self):
        for name in ("free_coeffs", "bound_coeffs", "eigenvalues"):
            arr = np.array(getattr(self, name), dtype=float).ravel()
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.bound_coeffs.shape != self.eigenvalues.shape:
            raise ShapeError("bound_coeffs and eigenvalues must have equal length")

    @property
    def norm_squared(self) -> float:
        return float(np.sum(self.free_coeffs**2) + np.sum(self.bound_coeffs**2))


@dataclass(frozen=True)
class Membership:
    value: float
    inside: bool


@dataclass(frozen=True)
class JacksonResult:
    tail_error: float
    bound: float
    satisfied: bool


def ellipsoid_membership(coords: EllipsoidCoords) -> Membership:
    """Evaluate ``sum lambda_j f_j^2`` and test it against 1.

    The free coordinates never enter: the set is a cylinder along those axes.
    """
    value = math.fsum(coords.eigenvalues * coords.bound_coeffs**2)
    return Membership(value, value <= 1.0 + MEMBERSHIP_SLACK)


def tail_check(coords: EllipsoidCoords, first_dropped: int) -> JacksonResult:
    """Compare the tail ``sqrt(sum_{j >= first_dropped} f_j^2)`` with ``1/sqrt(lambda_first_dropped)``.

    ``first_dropped`` is a 0-based index into the positive axes.

    Raises:
        NotInEllipsoidError: if the coordinates are outside the ellipsoid.
        RangeError: if the index lies beyond the stored eigenvalues.
    """
    member = ellipsoid_membership(coords)
    if not member.inside:
        raise NotInEllipsoidError(member.value)
    if not 0 <= first_dropped < len(coords.eigenvalues):
        raise RangeError(
            f"axis {first_dropped} beyond the {len(coords.eigenvalues)} stored positive eigenvalues"
        )
    tail = math.sqrt(math.fsum(coords.bound_coeffs[first_dropped:] ** 2))
    bound = 1.0 / math.sqrt(coords.eigenvalues[first_dropped])
    return JacksonResult(tail, bound, tail <= bound + JACKSON_SLACK)


def random_member(eigenvalues: np.ndarray, rng: np.random.Generator, decay: float,
                  n_free: int = 0, free_scale: float = 1.0) -> EllipsoidCoords:
    """Random point on the ellipsoid boundary with ``|f_j| ~ j**-decay``.

    Signs and a uniform [0.5, 1.5] jitter are drawn from ``rng``; the vector is
    then rescaled so that ``sum lambda_j f_j^2 = 1`` exactly (up to rounding).
    """
    lam = np.asarray(eigenvalues, dtype=float)
    j = np.arange(1, lam.size + 1, dtype=float)
    f = rng.choice([-1.0, 1.0], size=lam.size) * rng.uniform(0.5, 1.5, size=lam.size) * j**-decay
    f /= math.sqrt(math.fsum(lam * f * f))
    free = free_scale * rng.standard_normal(n_free)
    return EllipsoidCoords(free, f, lam)

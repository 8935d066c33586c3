"""Kolmogorov widths of Sobolev-type ellipsoids on the interval and of polyharmonic classes on the disk."""

__version__ = "0.1.0"

from .disk import (DiskProblem, DiskSpectrum, RadialBundle, assemble_disk, clamped_to_free_map,
                   expand_in_eigenbasis, jackson_check_disk, polyharmonic_null_basis,
                   radial_laplacian_matrix, solve_disk_spectrum)
from .ellipsoid import EllipsoidCoords, ellipsoid_membership
from .spectrum1d import (Problem1D, Spectrum1D, asymptotic_report, assemble_1d, jackson_check_1d,
                         kolmogorov_width_1d, solve_spectrum_1d)
from .widths import (Subspace, TruncatedEllipsoid, diagonal_perturbation_probe, dist_subspace_to_ellipsoid,
                     dist_to_subspace, extremality_experiment, jacobi_matrix_check, unbounded_distance_demo)

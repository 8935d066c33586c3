# Truncating the expansion of a member of the ellipsoid after N axes leaves an
# error of at most 1/sqrt(lambda_{N+1}), on the interval and on the disk.
# Run with: python3 demos/jackson_bounds.py
import numpy as np

from polywidth import (DiskProblem, Problem1D, jackson_check_1d, jackson_check_disk, solve_disk_spectrum,
                       solve_spectrum_1d)
from polywidth.disk import RadialBundle, expand_in_eigenbasis
from polywidth.ellipsoid import random_member

rng = np.random.default_rng(3)
beam = solve_spectrum_1d(Problem1D(2, 60))
lam = beam.positive_eigenvalues[:18]

# a random boundary point of the ellipsoid; the two free coordinates are
# arbitrary and never enter the bound
f = random_member(lam, rng, decay=2, n_free=2, free_scale=100.0)
print(" N   tail        bound")
for n in range(2, 10):
    res = jackson_check_1d(f, n)
    print(f"{n:2d}   {res.tail_error:.3e}   {res.bound:.3e}")

# on the disk, a smooth function is expanded on the harmonic functions plus
# the merged free eigenfunctions; Parseval is checked inside the expansion
disk = solve_disk_spectrum(DiskProblem(1, 3, 32))
g = RadialBundle({(0, "cos"): [1.0, 0.5, -0.2], (2, "sin"): [0.3, 0.1], (3, "cos"): [0.0, 0.05]})
coords = expand_in_eigenbasis(g, disk)
print("\n||g||^2 =", g.norm_squared(), " sum of squared coordinates =", coords.norm_squared)
print("harmonic part:", np.round(coords.free_coeffs, 6))

# scaled into the ellipsoid, the Jackson bound holds for every N
scale = 1.0 / np.sqrt(np.sum(coords.eigenvalues * coords.bound_coeffs**2))
inside = type(coords)(coords.free_coeffs, coords.bound_coeffs * scale, coords.eigenvalues)
for n in (0, 1, 5, 10, 20):
    res = jackson_check_disk(inside, n)
    print(f"N={n:2d}  tail {res.tail_error:.3e}  bound {res.bound:.3e}")

# The extremal subspace: all zero-eigenvalue axes plus the first N positive
# axes. Random competitors do no better, and dropping a zero-eigenvalue axis
# makes the distance infinite. Run with: python3 demos/width_extremality.py
import math

from polywidth import Problem1D, solve_spectrum_1d
from polywidth.widths import (ellipsoid_from_1d, extremality_experiment, missing_cylinder_distances,
                              diagonal_perturbation_probe, jacobi_matrix_check)

ell = ellipsoid_from_1d(solve_spectrum_1d(Problem1D(2, 60)), 12)
print("cylinder axes:", ell.n_free, " bound axes:", ell.K)

for n in range(1, 7):
    rep = extremality_experiment(ell, n, 200, seed=n)
    best = min(rep.trial_distances)
    print(f"N={n}  formula {rep.formula(n):.6e}  best random {best:.6e}  "
          f"ratio {best / rep.formula(n):.3f}")

print("drop one cylinder axis:", missing_cylinder_distances(ell, 3))

# scaling the operator by c scales every width by 1/c and keeps the argmin
probe = diagonal_perturbation_probe(ell, 2.0)
print("c=2: widths halved within", probe.max_ratio_error, " same extremal:", probe.same_extremal)
print(probe.note)

# derivative matrix of 1, x1, x2, x1^2 - x2^2, x1 x2 at the origin
chk = jacobi_matrix_check()
for row in chk.matrix:
    print(row)
print("det =", chk.determinant, " harmonic:", all(chk.harmonic))
print(chk.note)

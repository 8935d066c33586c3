# Widths of the Sobolev ellipsoid on [0, 1], computed from the natural-boundary
# eigenproblem. Run with: python3 demos/interval_widths.py
import math

import numpy as np

from polywidth import Problem1D, asymptotic_report, kolmogorov_width_1d, solve_spectrum_1d
from polywidth.oracles import beam_root

# p = 1: the eigenfunctions are cosines and the eigenvalues (pi j)^2
spec = solve_spectrum_1d(Problem1D(1, 40))
print("p=1 null dimension:", spec.null_dim)
print("lambda_2..lambda_6:", spec.eigenvalues[1:6])
print("(pi j)^2          :", (math.pi * np.arange(1, 6)) ** 2)

# the widths are infinite until the constants are matched, then 1/(pi N)
for n in range(4):
    print(f"d_{n} = {kolmogorov_width_1d(spec, n):.12g}")

# p = 2 is the free-free beam: two zero eigenvalues (constants and lines),
# then k^4 with cos k cosh k = 1
beam = solve_spectrum_1d(Problem1D(2, 60))
k = np.array([beam_root(j) for j in range(1, 7)])
print("\np=2 positive eigenvalues:", beam.positive_eigenvalues[:6])
print("beam roots k_j^4        :", k**4)

# ratio to the leading law (pi j)^4 approaches 1 slowly; it is monotone but
# still 1.38 at j = 6
rep = asymptotic_report(beam, 6)
for row in rep.rows:
    print(f"j={row.j}  r_j={row.ratio:.6f}")
print("fitted C in |r_j - 1| <= C/j:", rep.fitted_constant)

# the top of the discrete spectrum is not physical: compare basis sizes
for size in (30, 60, 120):
    s = solve_spectrum_1d(Problem1D(2, size))
    print(f"basis {size:3d}: lambda_{s.n_trusted + 2} = {s.eigenvalues[s.n_trusted + 1]:.6e}, "
          f"largest = {s.eigenvalues[-1]:.3e}")

# If the approximating space only contains the kernel of Delta^M with M < p,
# some polyharmonic function escapes it and can be scaled freely inside the
# set, so the distance is unbounded. Run with: python3 demos/unbounded_distance.py
import math

from polywidth import DiskProblem, solve_disk_spectrum
from polywidth.oracles import witness_slope
from polywidth.widths import unbounded_distance_demo

spec = solve_disk_spectrum(DiskProblem(2, 0, 32))
demo = unbounded_distance_demo(spec, 1, [0, 1, 2, 4, 8, 16])

# witness r^2: biharmonic, not harmonic; its residual against constants is
# r^2 - 1/2 with norm sqrt(pi/12)
for t, d in zip(demo.t_values, demo.distances):
    print(f"t={t:5.1f}  dist={d:.12f}")
print("slope", demo.slope, " expected", math.sqrt(math.pi / 12), " exact-rational", witness_slope(0, 1))
print("intercept", demo.intercept)
print(demo.conclusion)

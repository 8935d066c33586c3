"""Acceptance gate: one test per criterion, each reporting a single PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from polywidth import cli
from polywidth.disk import (DiskProblem, clamped_to_free_map, green_formula_check, jackson_check_disk,
                            solve_disk_spectrum)
from polywidth.ellipsoid import EllipsoidCoords, random_member
from polywidth.oracles import beam_root, clamped_plate_roots
from polywidth.spectrum1d import (Problem1D, asymptotic_report, jackson_check_1d, kolmogorov_width_1d,
                                  solve_spectrum_1d)
from polywidth.widths import (DISPLAYED_JACOBI, dist_subspace_to_ellipsoid, ellipsoid_from_1d, extremal_subspace,
                              extremality_experiment, jacobi_matrix_check, missing_cylinder_distances,
                              unbounded_distance_demo)

# frozen oracle values: scipy.optimize.brentq on cos k cosh k = 1, and on the
# clamped-plate determinant with scipy.special.jv/iv
BEAM_K = (4.730040744862704, 7.853204624095838, 10.995607838001671,
          14.137165491257464, 17.27875965739948, 20.42035224562606)
CLAMPED_K1 = {0: 3.1962206165825413, 1: 4.610899879049056, 2: 5.905678235420522}


def report(key, ok, detail):
    ACCEPTANCE[key] = (bool(ok), detail)
    print(f"{key} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def test_ac1_neumann():
    t0 = time.perf_counter()
    spec = solve_spectrum_1d(Problem1D(1, 40))
    j = np.arange(1, 11)
    lam_err = np.max(np.abs(spec.eigenvalues[1:11] / (math.pi * j) ** 2 - 1))
    d_err = max(abs(kolmogorov_width_1d(spec, n) * math.pi * n - 1) for n in range(1, 11))
    dt = time.perf_counter() - t0
    ok = lam_err <= 1e-8 and d_err <= 1e-8 and dt < 1.0
    report("AC1", ok, f"max rel err lambda {lam_err:.2e}, d_N {d_err:.2e} (tol 1e-8), {dt:.2f}s (< 1s)")


def test_ac2_beam():
    t0 = time.perf_counter()
    spec = solve_spectrum_1d(Problem1D(2, 60))
    roots = np.array([beam_root(j) for j in range(1, 7)])
    err = np.max(np.abs(spec.positive_eigenvalues[:6] / roots**4 - 1))
    dt = time.perf_counter() - t0
    frozen = np.max(np.abs(roots - BEAM_K))
    ok = err <= 1e-6 and spec.null_dim == 2 and dt < 2.0 and frozen <= 1e-12 and abs(roots[0] - 4.7300407) < 1e-7
    report("AC2", ok, f"max rel err {err:.2e} (tol 1e-6), null_dim {spec.null_dim}, {dt:.2f}s (< 2s)")


def test_ac3_asymptotics():
    roots = np.array([beam_root(j) for j in range(1, 7)])
    j = np.arange(1, 7)
    oracle_r = (roots / (math.pi * j)) ** 4
    rep = asymptotic_report(solve_spectrum_1d(Problem1D(2, 60)), 6)
    ratios = np.array([row.ratio for row in rep.rows])
    cross = np.max(np.abs(ratios / oracle_r - 1))
    dev = np.abs(oracle_r - 1)
    monotone = bool(np.all(np.diff(dev) < 0))
    ok = monotone and rep.monotone and cross <= 1e-6 and dev[-1] < 0.2
    report("AC3", ok, f"monotone {monotone}, |r_6 - 1| = {dev[-1]:.4f} (required < 0.2), "
                      f"discretization vs roots {cross:.1e}")


def test_ac4_clamped_disk():
    t0 = time.perf_counter()
    spec = solve_disk_spectrum(DiskProblem(1, 2, 32, "clamped"))
    errs = []
    for l in range(3):
        k = clamped_plate_roots(l, 1)[0]
        assert abs(k - CLAMPED_K1[l]) <= 1e-12
        errs.append(abs(spec.mode(l).eigenvalues[0] / k**4 - 1))
    dt = time.perf_counter() - t0
    lam0 = spec.mode(0).eigenvalues[0]
    ok = max(errs) <= 1e-5 and dt < 5.0 and abs(lam0 - 104.36) < 0.01
    report("AC4", ok, f"max rel err {max(errs):.2e} (tol 1e-5), lambda_1 = {lam0:.4f}, {dt:.2f}s (< 5s)")


def test_ac5_free_clamped():
    worst = {"eig": 0.0, "res": 0.0, "ortho": 0.0, "norm": 0.0}
    for p in (1, 2):
        free = solve_disk_spectrum(DiskProblem(p, 4, 32, "free"))
        clamped = solve_disk_spectrum(DiskProblem(p, 4, 32, "clamped"))
        for l in range(5):
            a = free.mode(l).positive_eigenvalues[:5]
            b = clamped.mode(l).eigenvalues[:5]
            worst["eig"] = max(worst["eig"], float(np.max(np.abs(a - b) / b)))
        for q in clamped_to_free_map(clamped, p).pairs:
            if q.checked:
                worst["res"] = max(worst["res"], q.residual)
                worst["ortho"] = max(worst["ortho"], q.null_overlap)
                worst["norm"] = max(worst["norm"], q.norm_ratio_error)
    ok = worst["eig"] <= 1e-6 and worst["res"] <= 1e-6 and worst["ortho"] <= 1e-8 and worst["norm"] <= 1e-6
    report("AC5", ok, "spectra {eig:.1e}, residual {res:.1e}, null overlap {ortho:.1e}, norm {norm:.1e}".format(**worst))


def test_ac6_green():
    errs = [max(r.relative_error for r in green_formula_check(p, 50, seed=2024)) for p in (1, 2)]
    report("AC6", max(errs) <= 1e-8, f"max relative defect p=1 {errs[0]:.1e}, p=2 {errs[1]:.1e} (tol 1e-8)")


def _jackson_suite(lam, check, n_free, offset, rng):
    worst_excess, worst_eq, count = -math.inf, 0.0, 0
    for _ in range(100):
        coords = random_member(lam, rng, decay=2, n_free=n_free, free_scale=5.0)
        for n in range(offset, offset + lam.size):
            res = check(coords, n)
            worst_excess = max(worst_excess, res.tail_error - res.bound)
            count += 1
    for k in range(lam.size):
        f = np.zeros(lam.size)
        f[k] = 1 / math.sqrt(lam[k])
        res = check(EllipsoidCoords(np.ones(n_free), f, lam), k + offset)
        worst_eq = max(worst_eq, abs(res.tail_error - res.bound))
    return worst_excess, worst_eq, count


def test_ac7_jackson():
    rng = np.random.default_rng(7)
    beam = solve_spectrum_1d(Problem1D(2, 60))
    e1, q1, c1 = _jackson_suite(beam.positive_eigenvalues[:18], jackson_check_1d, 2, 2, rng)
    disk = solve_disk_spectrum(DiskProblem(1, 4, 32))
    e2, q2, c2 = _jackson_suite(disk.merged_eigenvalues[:40], jackson_check_disk, len(disk.null_basis), 0, rng)
    ok = max(e1, e2) <= 1e-12 and max(q1, q2) <= 1e-12
    report("AC7", ok, f"{c1} 1D and {c2} disk checks, max tail - bound {max(e1, e2):.1e}, "
                      f"equality defect {max(q1, q2):.1e}")


def test_ac8_extremality():
    ell = ellipsoid_from_1d(solve_spectrum_1d(Problem1D(2, 60)), 12)
    worst_gap, worst_axis, blowups = math.inf, 0.0, True
    for n in range(1, 7):
        rep = extremality_experiment(ell, n, 200, seed=1000 + n)
        formula = rep.formula(n)
        worst_gap = min(worst_gap, min(rep.trial_distances) - formula)
        worst_axis = max(worst_axis, abs(dist_subspace_to_ellipsoid(extremal_subspace(ell, n), ell) - formula))
        blowups = blowups and all(d == math.inf for d in missing_cylinder_distances(ell, n))
    ok = worst_gap >= -1e-9 and worst_axis <= 1e-9 and blowups
    report("AC8", ok, f"min(search - formula) {worst_gap:.2e}, axis defect {worst_axis:.1e}, "
                      f"missing cylinder -> inf: {blowups}")


def test_ac9_unbounded():
    spec = solve_disk_spectrum(DiskProblem(2, 0, 32))
    demo = unbounded_distance_demo(spec, 1, [0.0, 0.5, 1.0, 2.0, 4.0, 8.0])
    s = math.sqrt(math.pi / 12)
    ok = abs(demo.slope - s) <= 1e-8 and abs(demo.intercept) <= 1e-10
    report("AC9", ok, f"slope error {abs(demo.slope - s):.1e} (tol 1e-8), intercept {demo.intercept:.1e} (tol 1e-10)")


def test_ac10_jacobi():
    chk = jacobi_matrix_check()
    ok = chk.matrix == DISPLAYED_JACOBI and abs(chk.determinant) == 2 and all(chk.harmonic)
    report("AC10", ok, f"matrix matches display {chk.matrix == DISPLAYED_JACOBI}, |det| = {abs(chk.determinant)}, "
                       f"harmonic {sum(chk.harmonic)}/5")


def test_ac11_determinism(tmp_path):
    mismatched = []
    for name in cli.COMMANDS:
        blobs = []
        for i in range(2):
            path = tmp_path / f"{name}-{i}.json"
            assert cli.main([name, "--seed", "11", "--out", str(path)]) == 0
            blobs.append(path.read_bytes())
        if blobs[0] != blobs[1]:
            mismatched.append(name)
    report("AC11", not mismatched, f"{len(cli.COMMANDS)} subcommands byte-identical across runs"
                                   + (f", mismatched: {mismatched}" if mismatched else ""))

"""polywidth: command-line harness for the width and eigenvalue experiments.

Usage:
    polywidth spectrum1d --p 1 --basis 40 --format json
    polywidth widths1d --p 1 --N 0 1 2
    polywidth extremality --trials 200 --seed 7 --out ext.csv --format csv

Every subcommand writes one result envelope (JSON) or one table (CSV) and
exits 0 when every embedded check passes, 2 when a check fails and 1 on a
usage error. Output contains no timestamps, so a fixed configuration always
produces the same bytes.

JSON envelope keys: schema, artifact, version, command, config, rows, checks,
notes, passed. Non-finite numbers are written as the strings "inf", "-inf" and
"nan"; floats use 17 significant digits.

CSV output is the rows table only: a header row with the union of row keys in
first-seen order, CRLF line endings. Rows that compare against a reference
carry the columns value, oracle, abs_err, rel_err, tolerance, provenance and
passed; provenance is one of closed-form, root-finding, exact-rational,
refinement, symbolic, structural.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .disk import (DiskProblem, MAX_RADIAL, clamped_to_free_map, green_formula_check, jackson_check_disk,
                   solve_disk_spectrum)
from .ellipsoid import EllipsoidCoords, random_member
from .errors import CounterexampleError, PolywidthError, RangeError, SizeError
from .oracles import beam_eigenvalue, clamped_plate_roots, neumann_eigenvalue, witness_slope
from .spectrum1d import (MAX_BASIS, Problem1D, asymptotic_report, jackson_check_1d, kolmogorov_width_1d,
                         solve_spectrum_1d)
from .widths import (DEFAULT_SEED, EXTREMAL_TOL, SCOPE_NOTE, dist_subspace_to_ellipsoid, ellipsoid_from_1d,
                     extremal_subspace, extremality_experiment, jacobi_matrix_check, missing_cylinder_distances,
                     unbounded_distance_demo)

SCHEMA = 1


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict
    out: str | None = None
    fmt: str = "json"


@dataclass
class Check:
    name: str
    value: object
    tolerance: object
    passed: bool
    provenance: str


@dataclass
class ResultEnvelope:
    config: RunConfig
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name, value, tolerance, passed, provenance):
        self.checks.append(Check(name, value, tolerance, bool(passed), provenance))
        return bool(passed)

    def compare(self, name, value, oracle, tolerance, provenance, relative=True, **extra):
        """Add a row comparing ``value`` with ``oracle`` and the matching check."""
        abs_err = abs(value - oracle)
        rel_err = abs_err / abs(oracle) if oracle else abs_err
        err = rel_err if relative else abs_err
        ok = err <= tolerance
        row = dict(name=name, **extra)
        row.update(value=value, oracle=oracle, abs_err=abs_err, rel_err=rel_err,
                   tolerance=tolerance, provenance=provenance, passed=ok)
        self.rows.append(row)
        self.check(name, err, tolerance, ok, provenance)
        return ok


# ---- serialization -----------------------------------------------------------

def _num(x) -> str:
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _plain(x):
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return x


def encode_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-digit floats, non-finite as strings."""
    obj = _plain(obj)
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {encode_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(not isinstance(_plain(v), (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(encode_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + encode_json(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def envelope_dict(env: ResultEnvelope) -> dict:
    return {
        "schema": SCHEMA,
        "artifact": "polywidth",
        "version": __version__,
        "command": env.config.command,
        "config": dict(env.config.params),
        "rows": env.rows,
        "checks": [c.__dict__ for c in env.checks],
        "notes": env.notes,
        "passed": env.passed,
    }


def _cell(x) -> str:
    x = _plain(x)
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return _num(x).strip('"')
    if isinstance(x, (list, tuple)):
        return " ".join(_cell(v) for v in x)
    return str(x)


def encode_csv(rows) -> str:
    header = []
    for row in rows:
        for k in row:
            if k not in header:
                header.append(k)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()


def render(env: ResultEnvelope) -> str:
    if env.config.fmt == "csv":
        return encode_csv(env.rows)
    return encode_json(envelope_dict(env)) + "\n"


# ---- subcommands -----------------------------------------------------------------

def _refine(size: int, step: int, limit: int) -> int:
    return size + step if size + step <= limit else size - step


def _oracle_1d(p: int, basis: int, count: int):
    """Reference positive eigenvalues and their provenance for the interval problem."""
    if p == 1:
        return [neumann_eigenvalue(j) for j in range(1, count + 1)], "closed-form"
    if p == 2:
        return [beam_eigenvalue(j) for j in range(1, count + 1)], "root-finding"
    ref = solve_spectrum_1d(Problem1D(p, _refine(basis, 40, MAX_BASIS)))
    return list(ref.positive_eigenvalues[:count]), "refinement"


def cmd_spectrum1d(a, env):
    spec = solve_spectrum_1d(Problem1D(a.p, a.basis))
    env.check("null_dim", spec.null_dim, a.p, spec.null_dim == a.p, "structural")
    for j in range(1, a.p + 1):
        env.compare(f"lambda_{j}", float(spec.eigenvalues[j - 1]), 0.0, 0.0, "structural", relative=False, j=j)
    count = min(a.count, spec.n_trusted - a.p)
    oracle, prov = _oracle_1d(a.p, a.basis, count)
    tol = 1e-8 if a.p == 1 else 1e-6
    for j in range(1, count + 1):
        env.compare(f"lambda_{a.p + j}", float(spec.eigenvalues[a.p + j - 1]), oracle[j - 1], tol, prov, j=a.p + j)


def cmd_widths1d(a, env):
    spec = solve_spectrum_1d(Problem1D(a.p, a.basis))
    ns = a.N if a.N is not None else list(range(0, 11))
    need = max(ns) - a.p + 1
    oracle, prov = _oracle_1d(a.p, a.basis, max(need, 1))
    tol = 1e-8 if a.p == 1 else 1e-6
    for n in ns:
        d = kolmogorov_width_1d(spec, n)
        if n < a.p:
            ok = math.isinf(d)
            env.rows.append(dict(name=f"d_{n}", N=n, value=d, oracle=math.inf, abs_err=0.0 if ok else math.inf,
                                 rel_err=0.0 if ok else math.inf, tolerance=0.0, provenance="structural", passed=ok))
            env.check(f"d_{n}", d, "inf", ok, "structural")
        else:
            env.compare(f"d_{n}", d, 1.0 / math.sqrt(oracle[n - a.p]), tol, prov, N=n)


def cmd_asymptotics(a, env):
    spec = solve_spectrum_1d(Problem1D(a.p, a.basis))
    rep = asymptotic_report(spec, a.j_max)
    oracle, prov = _oracle_1d(a.p, a.basis, a.j_max)
    tol = 1e-8 if a.p == 1 else 1e-6
    for row in rep.rows:
        ref = oracle[row.j - 1] / (math.pi * row.j) ** (2 * a.p)
        env.compare(f"r_{row.j}", row.ratio, ref, tol, prov, j=row.j, deviation=abs(row.ratio - 1.0),
                    within_C_over_j=row.within_bound)
    dev = [abs(oracle[j - 1] / (math.pi * j) ** (2 * a.p) - 1.0) for j in range(1, a.j_max + 1)]
    mono = all(y <= x for x, y in zip(dev, dev[1:]))
    env.check("oracle_deviation_monotone", mono, True, mono, prov)
    env.check("computed_deviation_monotone", rep.monotone, True, rep.monotone, "structural")
    env.notes.append(f"fitted constant C = {rep.fitted_constant!r} in |r_j - 1| <= C/j over j <= {a.j_max}")


def _jackson_rows(env, lambdas, n_free, first_n, check, trials, seed, decay, label):
    rng = np.random.default_rng(seed)
    members = [random_member(lambdas, rng, decay, n_free=n_free) for _ in range(trials)]
    for k in range(len(lambdas)):
        n = first_n + k
        worst = -math.inf
        all_ok = True
        for c in members:
            res = check(c, n)
            worst = max(worst, res.tail_error - res.bound)
            all_ok &= res.satisfied
        axis = np.zeros(len(lambdas))
        axis[k] = 1.0 / math.sqrt(lambdas[k])
        ext = check(EllipsoidCoords(np.zeros(n_free), axis, lambdas), n)
        eq_err = abs(ext.tail_error - ext.bound)
        ok = all_ok and eq_err <= 1e-12
        env.rows.append(dict(name=f"{label}_N{n}", N=n, bound=ext.bound, max_excess=worst, trials=trials,
                             equality_error=eq_err, tolerance=1e-12, provenance="closed-form", passed=ok))
        env.check(f"{label}_N{n}", max(worst, eq_err), 1e-12, ok, "closed-form")


def cmd_jackson1d(a, env):
    spec = solve_spectrum_1d(Problem1D(a.p, a.basis))
    k = a.K if a.K is not None else spec.n_trusted - a.p
    lam = spec.positive_eigenvalues[:k]
    _jackson_rows(env, lam, a.p, a.p, jackson_check_1d, a.trials, a.seed, a.p + 1, "jackson1d")


def cmd_jackson_disk(a, env):
    spec = solve_disk_spectrum(DiskProblem(a.p, a.l_max, a.radial, "free"))
    lam = spec.merged_eigenvalues[: a.K]
    _jackson_rows(env, lam, len(spec.null_basis), 0, jackson_check_disk, a.trials, a.seed, 2.0, "jackson_disk")


def cmd_disk_spectrum(a, env):
    prob = DiskProblem(a.p, a.l_max, a.radial, a.variant)
    spec = solve_disk_spectrum(prob)
    ref = None
    if a.p != 1:
        ref = solve_disk_spectrum(DiskProblem(a.p, a.l_max, _refine(a.radial, 16, MAX_RADIAL), a.variant))
    expect_null = a.p if a.variant == "free" else 0
    rank = {(e.l, e.kind, e.index): i + 1 for i, e in enumerate(spec.merged)}
    for ms in spec.modes:
        env.check(f"null_dim_l{ms.l}", ms.null_dim, expect_null, ms.null_dim == expect_null, "structural")
        env.check(f"nonnegative_l{ms.l}", float(ms.eigenvalues.min()), 0.0, ms.eigenvalues.min() >= 0.0, "structural")
        count = min(a.count, ms.n_trusted)
        if a.p == 1:
            oracle = [k**4 for k in clamped_plate_roots(ms.l, count)]
            prov, tol = "root-finding", 1e-5
        else:
            oracle = list(ref.modes[ms.l].positive_eigenvalues[:count])
            prov, tol = "refinement", 1e-6
        for k in range(count):
            env.compare(f"lambda_l{ms.l}_k{k + 1}", float(ms.positive_eigenvalues[k]), oracle[k], tol, prov,
                        l=ms.l, k=k + 1, merged_rank=rank[(ms.l, "cos", k)])
    if a.variant == "free":
        env.notes.append(f"{len(spec.null_basis)} zero eigenvalues retained ({a.p} per angular function, "
                         f"l <= {a.l_max}); the count grows without bound with l_max")


def cmd_clamped_free(a, env):
    clamped = solve_disk_spectrum(DiskProblem(a.p, a.l_max, a.radial, "clamped"))
    free = solve_disk_spectrum(DiskProblem(a.p, a.l_max, a.radial, "free"))
    try:
        mapped = clamped_to_free_map(clamped, a.p, n_checked=a.count)
    except PolywidthError as exc:
        env.check("clamped_to_free_map", str(exc), "construction", False, "structural")
        return
    for pair in mapped.pairs:
        if not pair.checked:
            continue
        lam_f = float(free.modes[pair.l].positive_eigenvalues[pair.index])
        rel = abs(lam_f - pair.eigenvalue) / pair.eigenvalue
        ok = (rel <= 1e-6 and pair.residual <= 1e-6 and pair.null_overlap <= 1e-8
              and pair.norm_ratio_error <= 1e-6)
        name = f"l{pair.l}_k{pair.index + 1}"
        env.rows.append(dict(name=name, l=pair.l, k=pair.index + 1, lambda_clamped=pair.eigenvalue,
                             lambda_free=lam_f, rel_diff=rel, residual=pair.residual,
                             null_overlap=pair.null_overlap, norm_ratio_error=pair.norm_ratio_error,
                             tolerance=[1e-6, 1e-6, 1e-8, 1e-6], provenance="refinement", passed=ok))
        env.check(name, max(rel, pair.residual, pair.norm_ratio_error), 1e-6, ok, "structural")


def cmd_extremality(a, env):
    spec = solve_spectrum_1d(Problem1D(a.p, a.basis))
    ell = ellipsoid_from_1d(spec, a.K)
    for n in range(1, a.N_max + 1):
        formula = 1.0 / math.sqrt(ell.lambdas[n])
        try:
            rep = extremality_experiment(ell, n, a.trials, a.seed + n)
        except CounterexampleError as exc:
            env.rows.append(dict(name=f"N{n}", N=n, formula=formula, search_min=exc.distance,
                                 tolerance=EXTREMAL_TOL, provenance="closed-form", passed=False))
            env.check(f"N{n}", exc.distance, formula - EXTREMAL_TOL, False, "closed-form")
            continue
        axis = next(r.d_N for r in rep.rows if r.witness == "axis-aligned" and r.method == "search")
        best = min(rep.trial_distances)
        ok = abs(axis - formula) <= EXTREMAL_TOL and best >= formula - EXTREMAL_TOL
        env.rows.append(dict(name=f"N{n}", N=n, formula=formula, axis_aligned=axis, search_min=best,
                             trials=a.trials, seed=a.seed + n, tolerance=EXTREMAL_TOL,
                             provenance="closed-form", passed=ok))
        env.check(f"N{n}", best - formula, -EXTREMAL_TOL, ok, "closed-form")
        missing = missing_cylinder_distances(ell, n)
        ok = all(math.isinf(d) for d in missing)
        env.check(f"N{n}_missing_cylinder", list(missing), "inf", ok, "structural")
    full = dist_subspace_to_ellipsoid(extremal_subspace(ell, ell.K), ell)
    env.check("full_space", full, 0.0, full == 0.0, "structural")
    env.notes.append(SCOPE_NOTE)


def cmd_unbounded(a, env):
    spec = solve_disk_spectrum(DiskProblem(a.p, a.l, a.radial, "free"))
    demo = unbounded_distance_demo(spec, a.M, a.t, l=a.l, n_eigen=a.n_eigen)
    slope = witness_slope(a.l, a.M)
    for t, d in zip(demo.t_values, demo.distances):
        env.compare(f"t={t!r}", d, slope * t, 1e-8 * max(1.0, abs(t)), "exact-rational", relative=False, t=t)
    env.compare("slope", demo.slope, slope, 1e-8, "exact-rational", relative=False)
    env.compare("intercept", demo.intercept, 0.0, 1e-10, "exact-rational", relative=False)
    env.check("affine_positive_slope", demo.affine, True, demo.affine, "structural")
    env.notes.append(demo.conclusion)
    env.notes.append(SCOPE_NOTE)


def cmd_jacobi(a, env):
    res = jacobi_matrix_check()
    names = ("1", "x1", "x2", "x1^2-x2^2", "x1*x2")
    for name, row in zip(names, res.matrix):
        env.rows.append(dict(name=f"u={name}", u_x1x1=row[0], u_x1x2=row[1], u_x1=row[2], u_x2=row[3], u=row[4],
                             tolerance=0, provenance="symbolic"))
    env.check("matches_display", res.matches_display, True, res.matches_display, "symbolic")
    env.check("abs_determinant", abs(res.determinant), 2, abs(res.determinant) == 2, "symbolic")
    env.check("harmonic", list(res.harmonic), True, all(res.harmonic), "symbolic")
    env.notes.append(res.note)


def cmd_green(a, env):
    rows = green_formula_check(a.p, a.pairs, a.seed, l_max=a.l_max, degree=a.degree)
    for i, r in enumerate(rows):
        ok = r.relative_error <= 1e-8
        env.rows.append(dict(name=f"pair{i}", l=r.l, interior=r.interior, boundary=r.boundary,
                             rel_err=r.relative_error, tolerance=1e-8, provenance="closed-form", passed=ok))
        env.check(f"pair{i}", r.relative_error, 1e-8, ok, "closed-form")


COMMANDS = {
    "spectrum1d": cmd_spectrum1d,
    "widths1d": cmd_widths1d,
    "asymptotics": cmd_asymptotics,
    "jackson1d": cmd_jackson1d,
    "disk-spectrum": cmd_disk_spectrum,
    "clamped-free": cmd_clamped_free,
    "jackson-disk": cmd_jackson_disk,
    "extremality": cmd_extremality,
    "unbounded-demo": cmd_unbounded,
    "jacobi-check": cmd_jacobi,
    "green-check": cmd_green,
}


# ---- argument parsing ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polywidth", description=__doc__.split("\n\n")[0],
                     epilog="\n\n".join(__doc__.split("\n\n")[2:]),
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"polywidth {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        return p

    def one_d(p, order, basis):
        p.add_argument("--p", type=int, default=order)
        p.add_argument("--basis", type=int, default=basis)

    def disk(p, order, l_max, radial=32):
        p.add_argument("--p", type=int, default=order)
        p.add_argument("--l-max", type=int, default=l_max)
        p.add_argument("--radial", type=int, default=radial)

    p = add("spectrum1d", "interval eigenvalues against closed-form or root-finding references")
    one_d(p, 1, 40)
    p.add_argument("--count", type=int, default=10, help="positive eigenvalues to compare")

    p = add("widths1d", "Kolmogorov widths d_N of the interval class")
    one_d(p, 1, 40)
    p.add_argument("--N", type=int, nargs="+", default=None)

    p = add("asymptotics", "ratios lambda_{p+j} / (pi j)^(2p)")
    one_d(p, 2, 60)
    p.add_argument("--j-max", type=int, default=6)

    p = add("jackson1d", "truncation error vs 1/sqrt(lambda_{N+1}) for random interval members")
    one_d(p, 2, 60)
    p.add_argument("--K", type=int, default=None, help="positive axes (default: trusted range)")
    p.add_argument("--trials", type=int, default=100)

    p = add("disk-spectrum", "per-mode disk eigenvalues against Bessel or refinement references")
    disk(p, 1, 2)
    p.add_argument("--variant", choices=("free", "clamped"), default="clamped")
    p.add_argument("--count", type=int, default=3)

    p = add("clamped-free", "clamped and free disk spectra and the map phi -> Delta^p phi")
    disk(p, 1, 4)
    p.add_argument("--count", type=int, default=5)

    p = add("jackson-disk", "multivariate truncation error for random disk members")
    disk(p, 1, 4)
    p.add_argument("--K", type=int, default=40)
    p.add_argument("--trials", type=int, default=100)

    p = add("extremality", "random competitor subspaces against the axis-aligned extremal subspace")
    one_d(p, 2, 60)
    p.add_argument("--K", type=int, default=12)
    p.add_argument("--N-max", type=int, default=6)
    p.add_argument("--trials", type=int, default=200)

    p = add("unbounded-demo", "distance from a lower-order kernel proxy to a polyharmonic witness t*y")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--radial", type=int, default=32)
    p.add_argument("--n-eigen", type=int, default=6)
    p.add_argument("--t", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.0, 4.0])

    add("jacobi-check", "symbolic 5x5 derivative matrix of five harmonic polynomials")

    p = add("green-check", "Green's formula for Delta^p on random radial polynomials")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--l-max", type=int, default=4)
    p.add_argument("--degree", type=int, default=8)
    return parser


def _validate(a):
    for name in ("count", "trials", "pairs", "K", "N_max", "j_max", "n_eigen", "degree"):
        v = getattr(a, name, None)
        if v is not None and v < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    if getattr(a, "N", None) is not None and min(a.N) < 0:
        raise UsageError("--N values must be non-negative")


def run(config: RunConfig, args: argparse.Namespace | None = None) -> tuple[ResultEnvelope, int]:
    """Execute one subcommand; returns the envelope and the exit status (0 pass, 2 check failure)."""
    env = ResultEnvelope(config)
    ns = args if args is not None else argparse.Namespace(**config.params)
    COMMANDS[config.command](ns, env)
    return env, 0 if env.passed else 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "out")}
    config = RunConfig(args.command, params, args.out, args.format)
    try:
        _validate(args)
        env, status = run(config, args)
    except (UsageError, SizeError, RangeError) as exc:
        print(f"polywidth {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except PolywidthError as exc:
        env = ResultEnvelope(config)
        env.check(type(exc).__name__, str(exc), None, False, "structural")
        status = 2
    except ValueError as exc:
        print(f"polywidth {args.command}: error: {exc}", file=sys.stderr)
        return 1
    text = render(env)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status:
        failing = [c.name for c in env.checks if not c.passed]
        print(f"polywidth {args.command}: failed checks: {', '.join(failing)}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())

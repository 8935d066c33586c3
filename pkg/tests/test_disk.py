import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polywidth.disk import (DiskProblem, RadialBundle, angular, assemble_disk, clamped_to_free_map,
                            ellipsoid_membership, expand_in_eigenbasis, green_formula_check, jackson_check_disk,
                            mode_family, natural_bc_defect, polyharmonic_null_basis, radial_laplacian_matrix,
                            radial_norm, solve_disk_spectrum)
from polywidth.ellipsoid import EllipsoidCoords, random_member
from polywidth.errors import DomainError, NotInEllipsoidError, RangeError, SizeError
from polywidth.numkernel.quadrature import gauss_legendre

# first roots of J_l(k) I_l'(k) - I_l(k) J_l'(k), scipy.special jv/iv + brentq
CLAMPED_K = {
    0: (3.1962206165825413, 6.306437047688425, 9.439499137876405),
    1: (4.610899879049056, 7.799273800811232, 10.958067191919497),
    2: (5.905678235420522, 9.196882599635321, 12.402220966864384),
    3: (7.143531023504839, 10.536669866589634, 13.795063594348294),
    4: (8.346605938750738, 11.836718456852012, 15.149870095505209),
}


@pytest.fixture(scope="module")
def free1():
    return solve_disk_spectrum(DiskProblem(1, 4, 32, "free"))


@pytest.fixture(scope="module")
def clamped1():
    return solve_disk_spectrum(DiskProblem(1, 4, 32, "clamped"))


@pytest.fixture(scope="module")
def free2():
    return solve_disk_spectrum(DiskProblem(2, 4, 32, "free"))


@pytest.fixture(scope="module")
def clamped2():
    return solve_disk_spectrum(DiskProblem(2, 4, 32, "clamped"))


@pytest.mark.parametrize("args", [(0, 2, 16), (3, 2, 16), (1, 13, 16), (1, 2, 3), (2, 2, 5), (1, 2, 65)])
def test_problem_validation(args):
    with pytest.raises(SizeError):
        DiskProblem(*args)
    with pytest.raises(ValueError):
        DiskProblem(1, 2, 16, "hinged")


def _profile(l, coeffs, r):
    return mode_family(l, len(coeffs)).values(r**2) @ coeffs * r**l


def _project(l, f, n):
    return mode_family(l, n).project(f, degree=n - 1)


def test_laplacian_examples():
    lap0 = radial_laplacian_matrix(0, 8)
    np.testing.assert_array_equal(lap0[:, 0], 0.0)
    r2 = _project(0, lambda s: s, 8)
    np.testing.assert_allclose(lap0 @ r2, _project(0, lambda s: 4.0 + 0 * s, 8), atol=1e-11)
    lap2 = radial_laplacian_matrix(2, 8)
    np.testing.assert_array_equal(lap2[:, 0], 0.0)


@given(l=st.integers(0, 6), seed=st.integers(0, 1000))
def test_laplacian_against_finite_differences(l, seed):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(6)
    lap = radial_laplacian_matrix(l, 6)
    r = np.linspace(0.3, 0.9, 5)
    h = 1e-4
    f = lambda x: _profile(l, c, x)
    fd = (f(r + h) - 2 * f(r) + f(r - h)) / h**2 + (f(r + h) - f(r - h)) / (2 * h * r) - l**2 * f(r) / r**2
    np.testing.assert_allclose(_profile(l, lap @ c, r), fd, atol=1e-5 * (1 + np.max(np.abs(fd))))


def test_free_null_spaces():
    pair = assemble_disk(DiskProblem(1, 0, 12), 0)
    assert np.linalg.matrix_rank(pair.stiffness, tol=1e-8 * np.max(pair.stiffness)) == 11
    # p=2, l=1: kernel is span{r, r^3}
    pair = assemble_disk(DiskProblem(2, 1, 12), 1)
    basis = np.array([_project(1, lambda s: 1 + 0 * s, 12), _project(1, lambda s: s, 12)]).T
    assert np.max(np.abs(pair.stiffness @ basis)) <= 1e-9 * np.max(np.abs(pair.stiffness))


@pytest.mark.parametrize("p", [1, 2])
def test_null_dim_per_mode(p, free1, free2):
    spec = free1 if p == 1 else free2
    for ms in spec.modes:
        assert ms.null_dim == p and np.all(ms.eigenvalues[:p] == 0.0)
        assert np.all(ms.positive_eigenvalues > 0)


def test_clamped_has_no_zero(clamped1):
    for ms in clamped1.modes:
        assert ms.null_dim == 0 and ms.eigenvalues[0] > 100.0


def test_clamped_bessel_oracle(clamped1):
    for l, ks in CLAMPED_K.items():
        lam = clamped1.mode(l).eigenvalues[:3]
        np.testing.assert_allclose(lam, np.array(ks) ** 4, rtol=1e-5)
    assert abs(clamped1.mode(0).eigenvalues[0] - 104.3631056) <= 1e-5


@pytest.mark.parametrize("pair", [("free1", "clamped1"), ("free2", "clamped2")])
def test_free_clamped_equivalence(pair, request):
    free, clamped = (request.getfixturevalue(n) for n in pair)
    for l in range(5):
        a = free.mode(l).positive_eigenvalues[:5]
        b = clamped.mode(l).eigenvalues[:5]
        assert np.max(np.abs(a - b) / b) <= 1e-6


@pytest.mark.parametrize("name, p", [("clamped1", 1), ("clamped2", 2)])
def test_clamped_to_free_map(name, p, request):
    clamped = request.getfixturevalue(name)
    mapped = clamped_to_free_map(clamped, p)
    checked = [q for q in mapped.pairs if q.checked]
    assert len(checked) == 25
    assert max(q.residual for q in checked) <= 1e-6
    assert max(q.null_overlap for q in checked) <= 1e-8
    assert max(q.norm_ratio_error for q in checked) <= 1e-6
    for ms, cm in zip(mapped.spectrum.modes, clamped.modes):
        np.testing.assert_array_equal(ms.positive_eigenvalues, cm.eigenvalues)


def test_clamped_to_free_requires_clamped(free1):
    with pytest.raises(ValueError):
        clamped_to_free_map(free1, 1)


def test_merged_sorted_and_duplicated(free1):
    lam = free1.merged_eigenvalues
    assert np.all(np.diff(lam) >= 0)
    kinds = {(e.l, e.kind) for e in free1.merged}
    assert (0, "sin") not in kinds and (3, "sin") in kinds
    counts = {}
    for e in free1.merged:
        counts[(e.l, e.index)] = counts.get((e.l, e.index), 0) + 1
    assert all(c == (1 if l == 0 else 2) for (l, _), c in counts.items())


@pytest.mark.parametrize("name", ["free1", "free2"])
def test_gram_and_cross_mode_orthogonality(name, request):
    spec = request.getfixturevalue(name)
    s, w = mode_family(0, 40).gauss_rule(79)
    for ms in spec.modes:
        fam = mode_family(ms.l, ms.eigenvectors.shape[0])
        v = fam.values(s) @ ms.eigenvectors
        gram = (v.T * (w * s**ms.l)) @ v
        assert np.max(np.abs(gram - np.eye(gram.shape[0]))) <= 1e-9
    # angular orthogonality spot check
    rule = gauss_legendre(40)
    th, wt = np.pi * (rule.nodes + 1), rule.weights
    for a, b in [((0, "cos"), (2, "cos")), ((1, "cos"), (1, "sin")), ((3, "sin"), (4, "sin"))]:
        assert abs(np.pi * np.sum(wt * angular(*a, th) * angular(*b, th))) <= 1e-12
    assert abs(np.pi * np.sum(wt * angular(2, "sin", th) ** 2) - 1) <= 1e-12


def test_free_eigenvalues_nonnegative(free2):
    top = max(float(ms.eigenvalues[-1]) for ms in free2.modes)
    assert all(np.min(ms.eigenvalues) >= -1e-9 * top for ms in free2.modes)


def test_natural_boundary_conditions(free1):
    for l in range(3):
        for k in range(4):
            assert natural_bc_defect(free1, l, k) <= 1e-4


def test_null_basis_examples():
    nb = polyharmonic_null_basis(1, 0)
    assert len(nb) == 1
    assert abs(nb[0](np.array([0.3]), np.array([1.0]))[0] - 1 / math.sqrt(math.pi)) <= 1e-15
    nb2 = polyharmonic_null_basis(2, 0)
    assert nb2[1].monomials == (Fraction(-1, 2), Fraction(1))
    assert len(polyharmonic_null_basis(2, 3)) == 2 * 7


@given(p=st.integers(1, 2), l=st.integers(0, 6))
def test_null_basis_orthonormal(p, l):
    fns = [f for f in polyharmonic_null_basis(p, l) if f.l == l]
    r, w = mode_family(0, 20).gauss_rule(39)
    rr = np.sqrt(r)
    # int_0^1 R1 R2 r dr = 1/2 int_0^1 R1 R2 ds with s = r^2, weight of the l=0 family is 1/2
    rad = np.array([f.radial(rr) for f in fns])
    gram = (rad * w) @ rad.T
    # periodic trapezoid rule, exact for trigonometric polynomials of degree < 32
    th = 2 * np.pi * np.arange(32) / 32
    ang = np.array([angular(f.l, f.kind, th) for f in fns])
    agram = (2 * np.pi / 32) * ang @ ang.T
    assert np.max(np.abs(gram * agram - np.eye(len(fns)))) <= 1e-12
    op = np.linalg.matrix_power(radial_laplacian_matrix(l, 8), p)
    for f in fns:
        assert np.max(np.abs(op @ f.coefficients(8))) <= 1e-14 * np.linalg.norm(op)


def test_expand_basis_elements(free1):
    g = free1.null_basis[0]
    coords = expand_in_eigenbasis(RadialBundle({(0, "cos"): g.coefficients(32)}), free1)
    assert abs(coords.free_coeffs[0] - 1) <= 1e-12 and np.max(np.abs(coords.free_coeffs[1:])) <= 1e-12
    e = free1.merged[2]
    coords = expand_in_eigenbasis(RadialBundle({(e.l, e.kind): free1.eigenvector(e)}), free1)
    target = np.zeros(len(free1.merged))
    target[2] = 1.0
    np.testing.assert_allclose(coords.bound_coeffs, target, atol=1e-12)


def _random_bundle(rng, l_max, degree):
    comps = {}
    for l in range(l_max + 1):
        for kind in ("cos",) if l == 0 else ("cos", "sin"):
            comps[(l, kind)] = rng.standard_normal(degree) / (1 + l) ** 2
    return RadialBundle(comps)


def test_parseval_against_direct_quadrature(free1):
    rng = np.random.default_rng(11)
    f = _random_bundle(rng, 4, 10)
    coords = expand_in_eigenbasis(f, free1)
    # direct 2D quadrature oracle
    rule = gauss_legendre(40)
    r = 0.5 * (rule.nodes + 1)
    wr = 0.5 * rule.weights
    th = 2 * np.pi * np.arange(64) / 64
    rr, tt = np.meshgrid(r, th, indexing="ij")
    direct = np.sum(f(rr, tt) ** 2 * (wr * r)[:, None]) * (2 * np.pi / 64)
    assert abs(coords.norm_squared - direct) <= 1e-8 * direct


def test_completeness_tail_decreases(free1):
    rng = np.random.default_rng(5)
    f = _random_bundle(rng, 4, 12)
    coords = expand_in_eigenbasis(f, free1)
    total = f.norm_squared()
    rest = total - float(np.sum(coords.free_coeffs**2))
    ks = range(0, len(coords.bound_coeffs) + 1, 10)
    tails = [rest - float(np.sum(coords.bound_coeffs[:k] ** 2)) for k in ks]
    tails.append(rest - float(np.sum(coords.bound_coeffs**2)))
    assert all(b <= a + 1e-12 for a, b in zip(tails, tails[1:]))
    assert abs(tails[-1]) <= 1e-8 * total


def test_expand_errors(free1, clamped1):
    with pytest.raises(RangeError):
        expand_in_eigenbasis(RadialBundle({(5, "cos"): np.ones(3)}), free1)
    with pytest.raises(DomainError):
        expand_in_eigenbasis(RadialBundle({(0, "cos"): np.ones(3)}), clamped1)


def test_membership_examples(free1):
    lam = free1.merged_eigenvalues
    zero = EllipsoidCoords(np.zeros(3), np.zeros(lam.size), lam)
    m = ellipsoid_membership(zero)
    assert m.value == 0.0 and m.inside
    assert ellipsoid_membership(EllipsoidCoords(np.full(3, 1e8), np.zeros(lam.size), lam)).inside
    f = np.zeros(lam.size)
    f[0] = 1 / math.sqrt(lam[0])
    m = ellipsoid_membership(EllipsoidCoords([], f, lam))
    assert abs(m.value - 1.0) <= 1e-15 and m.inside


def test_jackson_disk(free1):
    lam = free1.merged_eigenvalues[:40]
    rng = np.random.default_rng(2024)
    for _ in range(100):
        coords = random_member(lam, rng, decay=2, n_free=9, free_scale=10.0)
        for n in range(40):
            res = jackson_check_disk(coords, n)
            assert res.tail_error <= res.bound + 1e-12
    for n in range(40):
        f = np.zeros(40)
        f[n] = 1 / math.sqrt(lam[n])
        res = jackson_check_disk(EllipsoidCoords(np.ones(2), f, lam), n)
        assert abs(res.tail_error - res.bound) <= 1e-12
        f = np.zeros(40)
        f[:n] = 0.01 / np.sqrt(lam[:n])
        assert jackson_check_disk(EllipsoidCoords([], f, lam), n).tail_error == 0.0
    with pytest.raises(NotInEllipsoidError):
        jackson_check_disk(EllipsoidCoords([], np.ones(40), lam), 0)


@pytest.mark.parametrize("p", [1, 2])
def test_green_formula(p):
    rows = green_formula_check(p, 50, seed=99)
    assert max(r.relative_error for r in rows) <= 1e-8


def test_radial_norm_of_monomial():
    # int_0^1 r^(2l+4) r dr for R = r^(l+2)
    l = 3
    c = _project(l, lambda s: s, 6)
    assert abs(radial_norm(l, c) ** 2 - 1 / (2 * l + 6)) <= 1e-14


def test_deterministic_across_workers():
    prob = DiskProblem(2, 3, 20)
    a = solve_disk_spectrum(prob, workers=1)
    b = solve_disk_spectrum(prob, workers=4)
    assert a.merged == b.merged
    for x, y in zip(a.modes, b.modes):
        np.testing.assert_array_equal(x.eigenvectors, y.eigenvectors)


def test_mode_range(free1):
    with pytest.raises(RangeError):
        free1.mode(5)

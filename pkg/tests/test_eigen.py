import numpy as np
import pytest
import scipy.linalg as sl
from hypothesis import given, strategies as st

from polywidth.errors import DecompositionError
from polywidth.numkernel.eigen import GalerkinPair, cholesky, sym_generalized_eig
from polywidth.numkernel.roots import brent_root, scan_brackets


def _projector(v):
    return v @ v.T


def _check_decomposition(k, m, dec):
    v = dec.vectors
    assert np.max(np.abs(v.T @ m @ v - np.eye(len(k)))) <= 1e-10
    nk, nm = np.linalg.norm(k, 2), np.linalg.norm(m, 2)
    for lam, x in zip(dec.values, v.T):
        assert np.linalg.norm(k @ x - lam * m @ x) <= 1e-9 * (nk + abs(lam) * nm)
    assert np.all(np.diff(dec.values) >= 0)


def test_identity_pencil():
    dec = sym_generalized_eig(GalerkinPair(np.eye(3), np.eye(3)))
    np.testing.assert_array_equal(dec.values, [1.0, 1.0, 1.0])


def test_diagonal_null_space():
    dec = sym_generalized_eig(GalerkinPair(np.diag([0.0, 0.0, 4.0]), np.eye(3)))
    np.testing.assert_allclose(dec.values, [0, 0, 4], atol=1e-15)
    assert np.sum(np.abs(dec.values) < 1e-12) == 2


def test_two_by_two_by_hand():
    dec = sym_generalized_eig(GalerkinPair(np.array([[2.0, 1.0], [1.0, 2.0]]), np.eye(2)))
    np.testing.assert_allclose(dec.values, [1.0, 3.0], rtol=1e-15)


def test_indefinite_mass_names_pivot():
    m = np.array([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(DecompositionError) as exc:
        sym_generalized_eig(GalerkinPair(np.eye(2), m))
    assert exc.value.pivot == 1


def test_asymmetric_pair_rejected():
    with pytest.raises(ValueError):
        GalerkinPair(np.array([[1.0, 0.5], [0.0, 1.0]]), np.eye(2))


def test_cholesky_matches_scipy(rng):
    a = rng.standard_normal((6, 6))
    m = a.T @ a + np.eye(6)
    np.testing.assert_allclose(cholesky(m), sl.cholesky(m, lower=True), rtol=1e-13, atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 5, 17, 48, 49, 80])
def test_against_scipy(n, rng):
    a = rng.standard_normal((n, n))
    k = a + a.T
    b = rng.standard_normal((n, n))
    m = b.T @ b + n * np.eye(n)
    dec = sym_generalized_eig(GalerkinPair(k, m))
    ref = sl.eigh(k, m, eigvals_only=True)
    np.testing.assert_allclose(dec.values, ref, rtol=0, atol=1e-12 * np.abs(ref).max())
    _check_decomposition(k, m, dec)


def test_deterministic_and_sign_convention(rng):
    a = rng.standard_normal((20, 20))
    pair = GalerkinPair(a + a.T, np.eye(20))
    d1, d2 = sym_generalized_eig(pair), sym_generalized_eig(pair)
    assert np.array_equal(d1.values, d2.values) and np.array_equal(d1.vectors, d2.vectors)
    for col in d1.vectors.T:
        first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
        assert first > 0


def test_degenerate_cluster_projector(rng):
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    k = q @ np.diag([1.0, 2.0, 2.0, 2.0, 5.0, 7.0]) @ q.T
    dec = sym_generalized_eig(GalerkinPair(0.5 * (k + k.T), np.eye(6)))
    np.testing.assert_allclose(_projector(dec.vectors[:, 1:4]), _projector(q[:, 1:4]), atol=1e-12)


def test_wide_dynamic_range():
    lam = np.logspace(0, 14, 30)
    q, _ = np.linalg.qr(np.random.default_rng(3).standard_normal((30, 30)))
    k = q @ np.diag(lam) @ q.T
    dec = sym_generalized_eig(GalerkinPair(0.5 * (k + k.T), np.eye(30)))
    np.testing.assert_allclose(dec.values[-5:], lam[-5:], rtol=1e-12)


@given(seed=st.integers(0, 2**31 - 1))
def test_four_by_four_against_determinant_roots(seed):
    # independent route: scan det(K - lambda M) for sign changes, then Brent
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((4, 4))
    k = a + a.T
    b = rng.standard_normal((4, 4))
    m = b.T @ b + np.eye(4)
    dec = sym_generalized_eig(GalerkinPair(k, m))

    def det(lam):
        return np.linalg.det(k - lam * m)

    bound = np.abs(np.linalg.eigvals(np.linalg.solve(m, k))).max() + 1.0
    brackets = scan_brackets(det, -bound, bound, bound / 20000)
    roots = [brent_root(det, lo, hi) for lo, hi in brackets]
    if len(roots) == 4:  # a grid step can straddle a close pair; skip those draws
        np.testing.assert_allclose(dec.values, roots, atol=1e-8)
    _check_decomposition(k, m, dec)

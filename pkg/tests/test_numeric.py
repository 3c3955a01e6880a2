import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from atomicframes.errors import DimensionMismatch, NonFinite, NotHermitian
from atomicframes.numeric import Tolerances, hermitian_eig, pinv, rank, svd
from oracles import charpoly_eigenvalues, crandn


def test_eig_identity():
    w, V = hermitian_eig(np.eye(2))
    assert np.allclose(w, [1, 1])


def test_eig_diagonal_ascending():
    w, _ = hermitian_eig(np.diag([3.0, 1.0]))
    assert np.allclose(w, [1, 3])


def test_eig_matches_characteristic_polynomial(rng):
    A = crandn(rng, 3, 3)
    M = A + A.conj().T
    w, V = hermitian_eig(M)
    assert np.allclose(w, charpoly_eigenvalues(M), atol=1e-10, rtol=0)
    assert np.allclose(V.conj().T @ V, np.eye(3), atol=1e-12)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[1, 2], [0, 1]]))


def test_eig_rejects_nonfinite():
    with pytest.raises(NonFinite):
        hermitian_eig(np.array([[np.nan, 0], [0, 1]]))


def test_eig_rejects_rectangular():
    with pytest.raises(DimensionMismatch):
        hermitian_eig(np.ones((2, 3)))


def test_svd_trivial_cases():
    _, s, _ = svd(np.zeros((3, 2)))
    assert np.all(s == 0)
    _, s, _ = svd(np.diag([2.0, 0.0]))
    assert np.allclose(s, [2, 0])


def test_svd_vs_eig_of_gram(rng):
    M = crandn(rng, 4, 2)
    U, s, V = svd(M)
    w, _ = hermitian_eig(M.conj().T @ M)
    assert np.allclose(s, np.sqrt(w[::-1]), atol=1e-12)
    assert np.allclose(U @ np.diag(s) @ V.conj().T, M, atol=1e-12)


def test_svd_nonfinite():
    with pytest.raises(NonFinite):
        svd(np.array([[np.inf]]))


def test_pinv_trivial_cases():
    assert np.allclose(pinv(np.eye(3)), np.eye(3))
    assert np.allclose(pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))


def test_pinv_full_rank_is_inverse(rng):
    M = crandn(rng, 3, 3)
    assert np.allclose(pinv(M), np.linalg.inv(M), atol=1e-10, rtol=0)


def test_tolerance_defaults():
    tol = Tolerances()
    assert tol.residual_tol == 1e-9 and tol.bound_slack == 1e-8
    assert tol.cutoff((4, 6)) == 6 * np.finfo(float).eps * 8
    with pytest.raises(ValueError):
        Tolerances(rank_cutoff_rel=1.5)
    with pytest.raises(ValueError):
        Tolerances(bound_slack=0.0)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 7))
def test_hermitian_reconstruction(seed, d):
    rng = np.random.default_rng(seed)
    A = crandn(rng, d, d)
    M = A + A.conj().T
    w, V = hermitian_eig(M)
    assert np.all(np.diff(w) >= 0)
    scale = np.max(np.abs(M))
    assert np.max(np.abs(V @ np.diag(w) @ V.conj().T - M)) <= 1e-9 * scale
    assert np.max(np.abs(M @ V - V * w)) <= 1e-9 * scale


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 6), n=st.integers(1, 6), data=st.data())
def test_penrose_identities_all_ranks(seed, m, n, data):
    r = data.draw(st.integers(0, min(m, n)))
    rng = np.random.default_rng(seed)
    M = crandn(rng, m, r) @ crandn(rng, r, n) if r else np.zeros((m, n), dtype=complex)
    P = pinv(M)
    scale = max(1.0, np.abs(M).max()) * max(1.0, np.abs(P).max())
    assert np.max(np.abs(M @ P @ M - M)) <= 1e-9 * scale * max(1.0, np.abs(M).max())
    assert np.max(np.abs(P @ M @ P - P)) <= 1e-9 * scale * max(1.0, np.abs(P).max())
    assert np.max(np.abs((M @ P).conj().T - M @ P)) <= 1e-9 * scale
    assert np.max(np.abs((P @ M).conj().T - P @ M)) <= 1e-9 * scale
    _, s, _ = svd(M)
    assert np.all(np.diff(s) <= 0)
    assert rank(s, M.shape) == r

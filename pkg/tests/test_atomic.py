import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from atomicframes.atomic import (DualPair, adjoint_expansion_check, atomic_coefficients, build_atomic_system,
                                 lframe_bounds, minimal_bessel_dual, verify_theorem5)
from atomicframes.errors import DimensionMismatch, NotAtomicForL
from atomicframes.frames import FrameFamily, frame_bounds, synthesis
from oracles import crandn, random_instance, random_operator, rayleigh_extreme, unit_vectors

E2 = FrameFamily([[1, 0], [0, 1]])
E1_ONLY = FrameFamily([[1, 0]])
P1 = np.diag([1.0, 0.0])


def test_build_atomic_system_examples():
    assert np.allclose(build_atomic_system(np.eye(2)).vectors, np.eye(2))
    F0 = build_atomic_system(np.zeros((2, 2)))
    assert np.all(F0.vectors == 0)
    F = build_atomic_system(np.diag([2, 3]))
    assert np.allclose(F.vectors, [[2, 0], [0, 3]])
    c = lframe_bounds(F, np.diag([2, 3]))
    assert c.lower_A == pytest.approx(1, abs=1e-12) and c.upper_B == pytest.approx(9)


def test_build_atomic_system_energy_identity(rng):
    L = crandn(rng, 4, 4)
    F = build_atomic_system(L)
    X = crandn(rng, 4, 100)
    energy = np.sum(np.abs(F.vectors.conj() @ X) ** 2, axis=0)
    assert np.allclose(energy, np.linalg.norm(L.conj().T @ X, axis=0) ** 2, rtol=1e-12)


def test_zero_operator_is_vacuous():
    c = lframe_bounds(E2, np.zeros((2, 2)))
    assert c.vacuous and c.lower_A is None and c.range_condition_ok and c.coeff_norm_C == 0
    assert verify_theorem5(FrameFamily([[0, 0]]), np.zeros((2, 2))).all_pass


def test_lframe_identity_reduces_to_frame_bounds(rng):
    F = FrameFamily(crandn(rng, 7, 4))
    c, fb = lframe_bounds(F, np.eye(4)), frame_bounds(F)
    assert c.lower_A == fb.lower_A and c.upper_B == fb.upper_B


def test_lframe_build_random_full_rank(rng):
    L = crandn(rng, 5, 5)
    c = lframe_bounds(build_atomic_system(L), L)
    assert abs(c.lower_A - 1) <= 1e-9
    assert c.upper_B == pytest.approx(np.linalg.norm(L, 2) ** 2, rel=1e-12)


def test_lframe_projection_example():
    c = lframe_bounds(E1_ONLY, P1)
    assert c.range_condition_ok
    assert c.lower_A == pytest.approx(1) and c.upper_B == pytest.approx(1)


def test_lframe_deficient_identity():
    c = lframe_bounds(E1_ONLY, np.eye(2))
    assert not c.range_condition_ok and c.lower_A is None


def test_lframe_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lframe_bounds(E2, np.eye(3))


def test_lframe_witness_attains_bound(rng):
    for _ in range(10):
        F, L = random_instance(rng, 4, "covered")
        c = lframe_bounds(F, L)
        if c.lower_A is None:
            continue
        T, w = F.synthesis_matrix, c.witness
        q = np.linalg.norm(T.conj().T @ w) ** 2 / np.linalg.norm(L.conj().T @ w) ** 2
        assert q == pytest.approx(c.lower_A, rel=1e-8)


def test_pencil_against_polished_sampling(rng):
    # S couples range(L) with ker(L*): restricting to range(L) alone would overestimate A
    F = FrameFamily(crandn(rng, 5, 3))
    L = random_operator(rng, 3, 2)
    c = lframe_bounds(F, L)
    T = F.synthesis_matrix
    polished, sampled = rayleigh_extreme(T @ T.conj().T, L @ L.conj().T, 3, rng)
    assert c.lower_A <= sampled * (1 + 1e-9)
    assert polished == pytest.approx(c.lower_A, rel=1e-6)


def test_minimal_dual_examples():
    P = minimal_bessel_dual(E2, np.eye(2))
    assert np.allclose(P.duals.vectors, np.eye(2))
    P = minimal_bessel_dual(FrameFamily([[1], [1]]), np.eye(1))
    assert np.allclose(P.duals.vectors, [[0.5], [0.5]])
    assert P.coeff_norm_C == pytest.approx(np.sqrt(0.5))


def test_minimal_dual_random(rng):
    F = FrameFamily(crandn(rng, 12, 5))
    L = crandn(rng, 5, 5)
    P = minimal_bessel_dual(F, L)
    T = F.synthesis_matrix
    assert np.linalg.norm(T @ P.coefficient_map - L, 2) <= 1e-10 * np.linalg.norm(L, 2)
    X = crandn(rng, 5, 1000)
    assert np.all(np.linalg.norm(P.coefficient_map @ X, axis=0) <= P.coeff_norm_C * np.linalg.norm(X, axis=0) * (1 + 1e-12))


def test_minimal_dual_has_smaller_norm_than_alternatives(rng):
    F = FrameFamily(crandn(rng, 8, 3))
    L = crandn(rng, 3, 3)
    P = minimal_bessel_dual(F, L)
    T = F.synthesis_matrix
    K = np.eye(8) - np.linalg.pinv(T) @ T
    Theta_alt = P.coefficient_map + K @ crandn(rng, 8, 3)
    assert np.allclose(T @ Theta_alt, L, atol=1e-10)
    assert np.linalg.norm(Theta_alt, 2) >= P.coeff_norm_C


def test_minimal_dual_refuses_deficient():
    with pytest.raises(NotAtomicForL):
        minimal_bessel_dual(E1_ONLY, np.eye(2))
    with pytest.raises(NotAtomicForL):
        atomic_coefficients(E1_ONLY, np.eye(2), [1, 1])


def test_adjoint_expansion_examples(rng):
    r = adjoint_expansion_check(minimal_bessel_dual(E2, np.eye(2)), np.eye(2))
    assert r["matrix"] == 0
    F = FrameFamily(crandn(rng, 12, 5))
    L = crandn(rng, 5, 5)
    P = minimal_bessel_dual(F, L)
    assert adjoint_expansion_check(P, L)["matrix_rel"] <= 1e-10
    noisy = DualPair(P.atoms, FrameFamily(P.duals.vectors + 1e-3 * crandn(rng, 12, 5)))
    res = adjoint_expansion_check(noisy, L)["matrix"]
    scale = 1e-3 * np.linalg.norm(F.synthesis_matrix, 2)
    assert scale / 10 <= res <= scale * 10


def test_atomic_coefficients_examples(rng):
    assert np.allclose(atomic_coefficients(E2, np.eye(2), [1, 2j]), [1, 2j])
    assert np.all(atomic_coefficients(E2, np.eye(2), [0, 0]) == 0)
    F = FrameFamily(crandn(rng, 9, 4))
    L = crandn(rng, 4, 4)
    x = crandn(rng, 4)
    a = atomic_coefficients(F, L, x)
    assert np.linalg.norm(synthesis(F, a) - L @ x) <= 1e-10 * np.linalg.norm(L, 2) * np.linalg.norm(x)
    C = lframe_bounds(F, L).coeff_norm_C
    assert np.linalg.norm(a) <= C * np.linalg.norm(x) + 1e-8


def test_theorem5_examples(rng):
    L = crandn(rng, 4, 4)
    rep = verify_theorem5(build_atomic_system(L), L)
    assert rep.all_pass
    assert rep.certificate.coeff_norm_C == pytest.approx(1, abs=1e-9)
    assert rep.certificate.lower_A == pytest.approx(1, abs=1e-9)

    rep = verify_theorem5(E1_ONLY, np.eye(2))
    assert rep.coherent and not rep.checks["ii_lframe"] and not rep.checks["iii_bessel_dual"]

    F = FrameFamily(crandn(rng, 8, 4))
    L = crandn(rng, 4, 4)
    rep = verify_theorem5(F, L)
    assert rep.all_pass
    lam_min = frame_bounds(F).lower_A
    assert rep.certificate.lower_A >= lam_min / np.linalg.norm(L, 2) ** 2 * (1 - 1e-9)
    X = unit_vectors(rng, 4, 10_000)
    T = F.synthesis_matrix
    q = np.linalg.norm(T.conj().T @ X, axis=0) ** 2 / np.linalg.norm(L.conj().T @ X, axis=0) ** 2
    assert rep.certificate.lower_A <= q.min() * (1 + 1e-9)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 6),
       kind=st.sampled_from(["frame", "covered", "deficient", "zero"]))
def test_equivalence_coherence(seed, d, kind):
    rng = np.random.default_rng(seed)
    F, L = random_instance(rng, d, kind)
    rep = verify_theorem5(F, L, n_samples=64, seed=seed % 1000)
    assert rep.coherent, rep.checks
    c = rep.certificate
    if rep.all_pass and not c.vacuous:
        assert c.lower_A * c.coeff_norm_C ** 2 >= 1 - 1e-6


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 5),
       c=st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_scaling_covariance(seed, d, c):
    rng = np.random.default_rng(seed)
    F, L = random_instance(rng, d, "frame")
    if not np.any(L):
        L = crandn(rng, d, d)
    a1 = lframe_bounds(F, L).lower_A
    a2 = lframe_bounds(F, c * L).lower_A
    assert a2 == pytest.approx(a1 / abs(c) ** 2, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 5))
def test_monotone_under_append(seed, d):
    rng = np.random.default_rng(seed)
    F, L = random_instance(rng, d, "covered")
    c0 = lframe_bounds(F, L)
    c1 = lframe_bounds(F.append(crandn(rng, d)), L)
    assert c1.upper_B >= c0.upper_B * (1 - 1e-12)
    if c0.lower_A is not None:
        assert c1.lower_A >= c0.lower_A * (1 - 1e-9)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 6))
def test_build_exactness(seed, d):
    rng = np.random.default_rng(seed)
    L = crandn(rng, d, d)
    F = build_atomic_system(L)
    X = crandn(rng, d, 100)
    energy = np.sum(np.abs(F.vectors.conj() @ X) ** 2, axis=0)
    target = np.linalg.norm(L.conj().T @ X, axis=0) ** 2
    assert np.max(np.abs(energy - target) / target) <= 1e-12

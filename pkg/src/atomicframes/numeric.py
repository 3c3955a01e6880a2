"""Dense complex linear algebra substrate.

Thin, checked wrappers around LAPACK (through numpy) for the three spectral
primitives used everywhere else: Hermitian eigendecomposition, SVD and a
pseudoinverse with a relative rank cutoff. All routines are deterministic.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NonFinite, NotHermitian

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances carried into every certificate.

    Parameters
    ----------
    rank_cutoff_rel
        Singular values below ``rank_cutoff_rel * sigma_max`` count as zero.
        ``None`` selects ``max(rows, cols) * eps * 8`` for each matrix.
    residual_tol
        Relative tolerance for matrix identities and eigen residuals.
    bound_slack
        Slack used when testing frame inequalities on sampled vectors.
    """

    rank_cutoff_rel: Optional[float] = None
    residual_tol: float = 1e-9
    bound_slack: float = 1e-8

    def __post_init__(self):
        if self.rank_cutoff_rel is not None and not 0.0 < self.rank_cutoff_rel < 1.0:
            raise ValueError("rank_cutoff_rel must lie in (0, 1)")
        if not self.residual_tol > 0.0:
            raise ValueError("residual_tol must be positive")
        if not self.bound_slack > 0.0:
            raise ValueError("bound_slack must be positive")

    def cutoff(self, shape) -> float:
        if self.rank_cutoff_rel is not None:
            return self.rank_cutoff_rel
        return float(max(shape) * EPS * 8)

    def snapshot(self, shape=None) -> dict:
        out = asdict(self)
        if shape is not None:
            out["rank_cutoff_rel"] = self.cutoff(shape)
        return out


DEFAULT_TOL = Tolerances()


def as_matrix(M, name="matrix") -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {M.shape}")
    check_finite(M, name)
    return M


def as_vector(x, dim=None, name="vector") -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {x.shape}")
    if dim is not None and x.shape[0] != dim:
        raise DimensionMismatch(f"{name} has length {x.shape[0]}, expected {dim}")
    check_finite(x, name)
    return x


def check_finite(a, name="input"):
    if not np.all(np.isfinite(a)):
        raise NonFinite(f"{name} contains NaN or Inf")


def inner(x, y):
    """<x, y>, linear in x and conjugate-linear in y."""
    return np.vdot(y, x)


def hermitian_eig(M, tol: Tolerances = DEFAULT_TOL):
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"hermitian_eig needs a square matrix, got {M.shape}")
    scale = np.max(np.abs(M)) if M.size else 0.0
    defect = np.max(np.abs(M - M.conj().T)) if M.size else 0.0
    if defect > tol.residual_tol * scale:
        raise NotHermitian(f"|M - M*|_max = {defect:.3e} exceeds tolerance")
    w, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    return w, V


def svd(M, tol: Tolerances = DEFAULT_TOL):
    """Thin SVD ``M = U @ diag(s) @ V.conj().T`` with ``s`` descending."""
    M = as_matrix(M)
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    return U, s, Vh.conj().T


def rank(s, shape, tol: Tolerances = DEFAULT_TOL) -> int:
    """Numerical rank from a descending singular value list."""
    if len(s) == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.cutoff(shape) * s[0]))


def pinv(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with the relative rank cutoff of ``tol``."""
    M = as_matrix(M)
    U, s, V = svd(M, tol)
    r = rank(s, M.shape, tol)
    return (V[:, :r] / s[:r]) @ U[:, :r].conj().T


def null_space_left(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ker(M*), i.e. the orthogonal complement of range(M)."""
    M = as_matrix(M)
    U, s, _ = np.linalg.svd(M, full_matrices=True)
    r = rank(s, M.shape, tol)
    return U[:, r:]


def range_basis(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of range(M)."""
    M = as_matrix(M)
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    return U[:, : rank(s, M.shape, tol)]


def opnorm(M) -> float:
    """Spectral norm; 0 for empty matrices."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))

"""Finite frames on C^d: analysis, synthesis, frame operator, bounds, canonical dual.

Inner products are linear in the first slot and conjugate-linear in the second,
so that the analysis coefficients of x are ``<x, f_n> = sum_i x_i conj(f_n[i])``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import numeric
from .errors import DimensionMismatch, NotAFrame
from .numeric import DEFAULT_TOL, Tolerances


class FrameFamily:
    """An ordered finite family ``{f_n}`` of vectors in C^d.

    Stored as an ``(N, d)`` read-only array; ``synthesis_matrix`` is its
    ``(d, N)`` transpose whose columns are the ``f_n``. Zero vectors are
    allowed.
    """

    def __init__(self, vectors, dim: Optional[int] = None):
        arr = np.array(vectors, dtype=complex)
        if arr.ndim == 1 and dim is not None and arr.size == 0:
            arr = arr.reshape(0, dim)
        if arr.ndim != 2:
            raise DimensionMismatch(f"family must be a list of vectors, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionMismatch("a family needs at least one vector")
        if dim is not None and arr.shape[1] != dim:
            raise DimensionMismatch(f"vectors have length {arr.shape[1]}, expected {dim}")
        numeric.check_finite(arr, "family")
        arr.setflags(write=False)
        self._vectors = arr

    @classmethod
    def from_synthesis(cls, T):
        """Family whose n-th vector is the n-th column of ``T``."""
        return cls(numeric.as_matrix(T, "synthesis matrix").T)

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    @property
    def dim(self) -> int:
        return self._vectors.shape[1]

    @property
    def synthesis_matrix(self) -> np.ndarray:
        return self._vectors.T

    def __len__(self):
        return self._vectors.shape[0]

    def __getitem__(self, n):
        return self._vectors[n]

    def __iter__(self):
        return iter(self._vectors)

    def __eq__(self, other):
        return isinstance(other, FrameFamily) and np.array_equal(self._vectors, other._vectors)

    def __repr__(self):
        return f"FrameFamily(N={len(self)}, dim={self.dim})"

    def append(self, v) -> "FrameFamily":
        v = numeric.as_vector(v, self.dim)
        return FrameFamily(np.vstack([self._vectors, v[None, :]]))


@dataclass(frozen=True)
class BoundCertificate:
    """Optimal frame bounds of a finite family.

    ``lower_A`` is ``None`` when the smallest eigenvalue of S does not clear
    ``bound_slack``; the optimal lower constant is then reported in
    ``residuals["lambda_min"]`` (clipped at 0 it is the largest valid A).
    """

    lower_A: Optional[float]
    upper_B: float
    is_frame: bool
    residuals: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)


def analysis(F: FrameFamily, x) -> np.ndarray:
    x = numeric.as_vector(x, F.dim, "x")
    return F.vectors.conj() @ x


def synthesis(F: FrameFamily, c) -> np.ndarray:
    c = numeric.as_vector(c, len(F), "coefficients")
    return F.synthesis_matrix @ c


def frame_operator(F: FrameFamily) -> np.ndarray:
    """S = T T*, the d x d frame operator."""
    T = F.synthesis_matrix
    return T @ T.conj().T


def _extreme_squares(F: FrameFamily):
    # spectrum of S from the singular values of T: sigma_i^2, padded with zeros
    s = np.linalg.svd(F.synthesis_matrix, compute_uv=False)
    lam_max = float(s[0] ** 2) if s.size else 0.0
    lam_min = float(s[-1] ** 2) if len(F) >= F.dim else 0.0
    return lam_min, lam_max


def frame_bounds(F: FrameFamily, tol: Tolerances = DEFAULT_TOL) -> BoundCertificate:
    """Optimal frame bounds ``A = lambda_min(S)``, ``B = lambda_max(S)``."""
    lam_min, lam_max = _extreme_squares(F)
    S = frame_operator(F)
    w, _ = numeric.hermitian_eig(S, tol)
    is_frame = lam_min > tol.bound_slack
    residuals = {
        "lambda_min": lam_min,
        "lambda_max": lam_max,
        "psd_violation": float(max(0.0, -w[0])) if w.size else 0.0,
        "eig_vs_svd": float(abs(w[-1] - lam_max) / max(lam_max, 1.0)) if w.size else 0.0,
    }
    return BoundCertificate(
        lower_A=lam_min if is_frame else None,
        upper_B=lam_max,
        is_frame=bool(is_frame),
        residuals=residuals,
        tolerances=tol.snapshot(S.shape),
    )


def bessel_bound(F: FrameFamily) -> float:
    """Optimal Bessel constant ``B = sigma_max(T)^2``."""
    return _extreme_squares(F)[1]


def _dual_synthesis(F: FrameFamily, tol: Tolerances) -> np.ndarray:
    cert = frame_bounds(F, tol)
    if not cert.is_frame:
        raise NotAFrame(
            f"lambda_min(S) = {cert.residuals['lambda_min']:.3e} <= bound_slack = {tol.bound_slack:.1e}"
        )
    # S^-1 T = U diag(1/s) V*, avoids squaring the condition number of T
    U, s, V = numeric.svd(F.synthesis_matrix, tol)
    return (U / s) @ V.conj().T


def canonical_dual(F: FrameFamily, tol: Tolerances = DEFAULT_TOL) -> FrameFamily:
    """The canonical dual frame ``{S^-1 f_n}``."""
    return FrameFamily.from_synthesis(_dual_synthesis(F, tol))


def reconstruct(F: FrameFamily, x, tol: Tolerances = DEFAULT_TOL, swapped: bool = False) -> np.ndarray:
    """Rebuild x from its frame coefficients.

    With ``swapped=False`` returns ``sum <x, f_n> S^-1 f_n``; with
    ``swapped=True`` returns ``sum <x, S^-1 f_n> f_n``.
    """
    x = numeric.as_vector(x, F.dim, "x")
    T = F.synthesis_matrix
    D = _dual_synthesis(F, tol)
    if swapped:
        return T @ (D.conj().T @ x)
    return D @ (T.conj().T @ x)

"""Finite models of the kernel spaces and sampling certificates.

Each space is replaced by the span of the first N+1 orthonormal monomials
``e_k(z) = z^k / rho_k``. In these coordinates the kernel at ``lam`` has
entries ``conj(lam)^k / rho_k``, point evaluation is an inner product, and
normalised kernels at a point set form a ``FrameFamily`` to which the L-frame
machinery applies. Every certificate produced here is valid for the degree-N
truncation only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import numeric
from .atomic import LFrameCertificate, as_operator, atomic_coefficients, lframe_bounds, minimal_bessel_dual
from .errors import DimensionMismatch, DomainViolation, NonRadialWeight, NotAvailable
from .frames import FrameFamily, synthesis
from .kernels import (BergmanStandard, DiscSpec, Fock, KernelSpec, RadialWeightedBergman,
                      WeightFunction, disc_integral, in_domain, kernel_norm, radial_moment)
from .numeric import DEFAULT_TOL, Tolerances

TRUNCATION_SCOPE = "valid for the degree-N truncation only; no claim about the infinite-dimensional space"
NORM_MODES = ("truncated", "closed_form")


def default_degree(spec: KernelSpec) -> int:
    """64 for Bergman variants (|lam| <= 0.95), 32 for Fock (|lam| <= 3)."""
    return 32 if isinstance(spec, Fock) else 64


@dataclass(frozen=True)
class TruncatedBasis:
    spec: KernelSpec
    degree: int
    norm_sq: np.ndarray = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.degree + 1

    @property
    def rho(self) -> np.ndarray:
        return np.sqrt(self.norm_sq)


def build_basis(spec: KernelSpec, N: int, resolution: Optional[int] = None) -> TruncatedBasis:
    """Squared monomial norms ``rho_k^2 = ||z^k||^2`` for ``k = 0..N``."""
    if N < 0:
        raise ValueError("degree must be non-negative")
    k = np.arange(N + 1)
    if isinstance(spec, BergmanStandard):
        eta = spec.eta
        lg = np.array([math.lgamma(j + 1) + math.lgamma(2 + eta) - math.lgamma(j + 2 + eta) for j in k])
        norm_sq = np.exp(lg)
    elif isinstance(spec, Fock):
        lg = np.array([math.lgamma(j + 1) for j in k]) - k * math.log(spec.alpha)
        norm_sq = np.exp(lg)
    elif isinstance(spec, RadialWeightedBergman):
        if not isinstance(spec.weight, WeightFunction):
            raise NonRadialWeight("weighted Bergman bases need a radial WeightFunction")
        n = resolution or max(64, 2 * N + 16)
        norm_sq = np.array([radial_moment(spec.weight, int(j), n) for j in k])
    else:
        raise TypeError(f"unknown kernel spec {spec!r}")
    norm_sq.setflags(write=False)
    return TruncatedBasis(spec=spec, degree=N, norm_sq=norm_sq)


def kernel_coordinates(B: TruncatedBasis, lam) -> np.ndarray:
    """Coordinates of ``K_lam`` in the truncated basis: ``conj(lam)^k / rho_k``."""
    lam = complex(lam)
    if not np.isfinite(lam) or not in_domain(B.spec, lam):
        raise DomainViolation(f"point {lam} outside the kernel domain")
    powers = np.conj(lam) ** np.arange(B.dim)
    return powers / B.rho


def evaluate(B: TruncatedBasis, f_coords, lam) -> complex:
    """``f(lam)`` for ``f = sum c_k e_k``, computed as ``<f, K_lam>``."""
    f = numeric.as_vector(f_coords, B.dim, "f")
    return complex(numeric.inner(f, kernel_coordinates(B, lam)))


def truncated_kernel_norm(B: TruncatedBasis, lam) -> float:
    return float(np.linalg.norm(kernel_coordinates(B, lam)))


@dataclass(frozen=True)
class PointSet:
    """Pairwise distinct sample points (exact comparison only)."""

    points: tuple

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        if not pts:
            raise ValueError("point set is empty")
        if not all(np.isfinite(p) for p in pts):
            raise DomainViolation("points must be finite")
        if len(set(pts)) != len(pts):
            raise DomainViolation("sample points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def check_domain(self, spec: KernelSpec):
        for p in self.points:
            if not in_domain(spec, p):
                raise DomainViolation(f"point {p} outside the kernel domain")


def square_lattice(spacing: float, half_width: float) -> PointSet:
    """``spacing * (m + i n)`` inside the square ``[-half_width, half_width]^2``."""
    m = int(math.floor(half_width / spacing + 1e-12))
    ticks = spacing * np.arange(-m, m + 1)
    return PointSet(tuple(complex(x, y) for y in ticks for x in ticks))


def radial_exponential_lattice(s: float, levels: int, angles: int, include_origin: bool = True) -> PointSet:
    """Points on circles ``r_j = 1 - s^j`` (j = 1..levels), ``angles`` per circle, staggered."""
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    pts = [0j] if include_origin else []
    for j in range(1, levels + 1):
        r = 1.0 - s ** j
        offset = 0.5 * (j % 2)
        pts.extend(r * np.exp(2j * np.pi * (np.arange(angles) + offset) / angles))
    return PointSet(tuple(pts))


def sample_scale_factors(spec: KernelSpec, points: Sequence[complex], resolution: int = 32) -> np.ndarray:
    """Weights ``1/||K_lam||`` as they appear in the sampling inequality for each space.

    Bergman: ``1 - |lam|^2`` (eta = 0) or ``(1 - |lam|^2)^(1 + eta/2)``; Fock:
    ``exp(-alpha |lam|^2 / 2)``; radial weight: ``(int_D omega dA)^(1/2)``.
    """
    lam = np.asarray(points, dtype=complex)
    a2 = np.abs(lam) ** 2
    if isinstance(spec, BergmanStandard):
        if spec.eta == 0:
            return 1.0 - a2
        return (1.0 - a2) ** (1.0 + spec.eta / 2.0)
    if isinstance(spec, Fock):
        return np.exp(-spec.alpha * a2 / 2.0)
    if spec.disc_alpha is None:
        raise NotAvailable("radial weighted scale factors need disc_alpha")
    return np.array([disc_integral(spec.weight, DiscSpec(p, spec.disc_alpha), resolution) ** 0.5
                     for p in lam])


def kernel_norms(B: TruncatedBasis, points: PointSet, norm_mode: str = "truncated") -> np.ndarray:
    if norm_mode not in NORM_MODES:
        raise ValueError(f"norm_mode must be one of {NORM_MODES}")
    if norm_mode == "truncated":
        return np.array([truncated_kernel_norm(B, p) for p in points])
    if isinstance(B.spec, RadialWeightedBergman) and B.spec.disc_alpha is None:
        raise NotAvailable("closed_form norms for a weighted space need disc_alpha")
    return np.array([float(kernel_norm(B.spec, p)) for p in points])


def normalized_kernel_family(B: TruncatedBasis, points: PointSet, norm_mode: str = "truncated") -> FrameFamily:
    """Family ``{K_lam_n / ||K_lam_n||}`` in truncated coordinates."""
    points.check_domain(B.spec)
    norms = kernel_norms(B, points, norm_mode)
    coords = np.array([kernel_coordinates(B, p) for p in points])
    return FrameFamily(coords / norms[:, None])


def _reference_norms(B: TruncatedBasis, points: PointSet) -> np.ndarray:
    if isinstance(B.spec, RadialWeightedBergman):
        # no closed form: compare against a four times longer truncation
        ref = build_basis(B.spec, 4 * B.degree + 4)
        return np.array([truncated_kernel_norm(ref, p) for p in points])
    return np.array([float(kernel_norm(B.spec, p)) for p in points])


def truncation_diagnostics(B: TruncatedBasis, points: PointSet) -> np.ndarray:
    """Per-point ratio of the truncated kernel norm to the full one, in (0, 1]."""
    trunc = np.array([truncated_kernel_norm(B, p) for p in points])
    return np.minimum(trunc / _reference_norms(B, points), 1.0)


@dataclass(frozen=True)
class SamplingAudit:
    certificate: LFrameCertificate
    truncation_degree: int
    truncation_diagnostics: np.ndarray = field(repr=False, compare=False)
    estimate_flag: bool = False
    norm_mode: str = "truncated"
    scope: str = TRUNCATION_SCOPE

    @property
    def passed(self) -> bool:
        c = self.certificate
        return c.vacuous or c.lower_A is not None


def _operator(B, L):
    if L is None:
        return np.eye(B.dim, dtype=complex)
    L = as_operator(L)
    if L.shape[0] != B.dim:
        raise DimensionMismatch(f"operator acts on C^{L.shape[0]}, truncated space has dimension {B.dim}")
    return L


def sampling_audit(B: TruncatedBasis, points: PointSet, L=None, norm_mode: str = "truncated",
                   tol: Tolerances = DEFAULT_TOL) -> SamplingAudit:
    """Optimal constants of ``A ||L* f||^2 <= sum |f(lam_n)|^2 / ||K_lam_n||^2 <= B ||f||^2``."""
    L = _operator(B, L)
    F = normalized_kernel_family(B, points, norm_mode)
    cert = lframe_bounds(F, L, tol)
    return SamplingAudit(
        certificate=cert,
        truncation_degree=B.degree,
        truncation_diagnostics=truncation_diagnostics(B, points),
        estimate_flag=isinstance(B.spec, RadialWeightedBergman),
        norm_mode=norm_mode,
    )


@dataclass(frozen=True)
class SampleReconstruction:
    coefficients: np.ndarray
    reconstruction: np.ndarray
    residual_rel: float
    coeff_norm_C: float


def operator_sample_reconstruct(B: TruncatedBasis, points: PointSet, L, f_coords,
                                norm_mode: str = "truncated", tol: Tolerances = DEFAULT_TOL) -> SampleReconstruction:
    """Recover ``Lf`` as ``sum a_n k_lam_n`` with minimal-norm atomic coefficients."""
    L = _operator(B, L)
    f = numeric.as_vector(f_coords, B.dim, "f")
    F = normalized_kernel_family(B, points, norm_mode)
    a = atomic_coefficients(F, L, f, tol)
    Lf = synthesis(F, a)
    target = L @ f
    scale = numeric.opnorm(L) * np.linalg.norm(f)
    err = float(np.linalg.norm(Lf - target))
    C = numeric.opnorm(numeric.pinv(F.synthesis_matrix, tol) @ L)
    return SampleReconstruction(a, Lf, err / scale if scale > 0 else err, C)


def adjoint_sample_expansion(B: TruncatedBasis, points: PointSet, L, f_coords,
                             norm_mode: str = "truncated", tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``L* f = sum f(lam_n) / ||K_lam_n|| g_n`` with the minimal Bessel dual ``{g_n}``."""
    L = _operator(B, L)
    f = numeric.as_vector(f_coords, B.dim, "f")
    F = normalized_kernel_family(B, points, norm_mode)
    samples = np.array([evaluate(B, f, p) for p in points])
    scaled = samples / kernel_norms(B, points, norm_mode)
    pair = minimal_bessel_dual(F, L, tol)
    return synthesis(pair.duals, scaled)

"""Reproducing kernels of the Bergman, weighted Bergman and Fock spaces.

Area measures are normalised so the unit disc has mass 1: ``dA = dx dy / pi``.
Bergman kernels live on the disc, Fock kernels on the whole plane. For a
radial Bekolle weight there is no closed-form kernel; only a norm estimate
through the mass of the weight on a hyperbolic-size disc is offered.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainViolation, NonFinite, NotAvailable, QuadratureDivergence

CONVERGENCE_GATE = 1e-3


# --------------------------------------------------------------------- weights

@dataclass(frozen=True)
class WeightFunction:
    """Positive radial weight ``omega(r)`` on ``[0, 1)``."""

    func: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    name: str = "custom"
    params: tuple = ()

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.asarray(self.func(r), dtype=float)
        if out.shape != r.shape:
            out = np.broadcast_to(out, r.shape).copy()
        if not np.all(np.isfinite(out)):
            raise NonFinite(f"weight {self.name} is not finite on the quadrature grid")
        if np.any(out <= 0):
            raise DomainViolation(f"weight {self.name} must be positive on [0, 1)")
        return out

    def reciprocal(self) -> "WeightFunction":
        f = self.func
        return WeightFunction(lambda r: 1.0 / f(r), name=f"1/{self.name}", params=self.params)

    def describe(self) -> dict:
        return {"name": self.name, "params": list(self.params)}


def constant_weight(c: float = 1.0) -> WeightFunction:
    if not c > 0:
        raise DomainViolation("constant weight must be positive")
    return WeightFunction(lambda r: np.full_like(r, c, dtype=float), "constant", (float(c),))


def poly_weight(s: float) -> WeightFunction:
    """``(1 - r^2)^s``."""
    return WeightFunction(lambda r: (1.0 - r * r) ** s, "poly", (float(s),))


def log_weight(s: float, t: float) -> WeightFunction:
    """``(1 - r^2)^s * log(e / (1 - r^2))^t``."""
    def f(r):
        u = 1.0 - r * r
        return u ** s * (1.0 - np.log(u)) ** t
    return WeightFunction(f, "log", (float(s), float(t)))


# ------------------------------------------------------------------ quadrature

def _gl(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _endpoint_integral(g, a, b, n):
    """int_a^b g(r) dr with r = b - (b - a) t^2, which tames (b - r)^beta singularities."""
    t, w = _gl(n)
    r = b - (b - a) * t * t
    return float(np.sum(w * g(r) * 2.0 * (b - a) * t))


def _gated(compute, n, what):
    coarse = compute(n)
    fine = compute(2 * n)
    if not np.isfinite(fine) or abs(fine - coarse) > CONVERGENCE_GATE * abs(fine):
        raise QuadratureDivergence(
            f"{what}: resolution {n} -> {2 * n} changed the value from {coarse:.6e} to {fine:.6e}"
        )
    return fine


def radial_moment(w: WeightFunction, k: int, resolution: int = 64) -> float:
    """``||z^k||^2 = 2 int_0^1 r^(2k+1) omega(r) dr`` under ``omega dA``."""
    return _gated(
        lambda n: _endpoint_integral(lambda r: 2.0 * r ** (2 * k + 1) * w(r), 0.0, 1.0, n),
        resolution, f"moment k={k} of weight {w.name}",
    )


@dataclass(frozen=True)
class DiscSpec:
    """The disc ``{z : |z - center| < alpha (1 - |center|)}``."""

    center: complex
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainViolation("disc alpha must lie in (0, 1)")
        if not abs(self.center) < 1.0:
            raise DomainViolation("disc center must lie in the unit disc")

    @property
    def radius(self) -> float:
        return self.alpha * (1.0 - abs(self.center))


def disc_integral(w: WeightFunction, disc: DiscSpec, resolution: int = 32) -> float:
    """``int_D omega dA`` by Gauss-Legendre in radius and trapezoid in angle about the centre."""
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    R = disc.radius
    c = complex(disc.center)

    def compute(n):
        rho, wr = _gl(n)
        rho = R * rho
        wr = R * wr
        m = 2 * n
        phi = 2.0 * np.pi * np.arange(m) / m
        z = c + rho[:, None] * np.exp(1j * phi)[None, :]
        vals = w(np.abs(z))
        # (1/pi) * int int omega rho drho dphi
        return float(np.sum((vals.sum(axis=1) * (2.0 * np.pi / m)) * wr * rho) / np.pi)

    return _gated(compute, resolution, "disc integral")


@dataclass(frozen=True)
class CarlesonSquare:
    """``{r e^(i a) : 1 - h < r < 1, |theta - a| < h/2}``."""

    theta: float
    h: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= 2 * np.pi:
            raise DomainViolation("theta must lie in [0, 2 pi]")
        if not 0.0 < self.h < 1.0:
            raise DomainViolation("h must lie in (0, 1)")


def default_carleson_grid(n_theta: int = 16, n_h: int = 16, h_min: float = 1e-3,
                          h_max: float = 0.95) -> list:
    """Uniform in theta, log-spaced in h."""
    thetas = 2 * np.pi * np.arange(n_theta) / n_theta
    hs = np.geomspace(h_min, h_max, n_h)
    return [CarlesonSquare(float(t), float(h)) for t in thetas for h in hs]


@dataclass(frozen=True)
class BekolleResult:
    sup_ratio: float
    argmax: CarlesonSquare
    ratios: np.ndarray = field(repr=False, compare=False)
    note: str = "grid lower bound on the B2(eta) constant; the sup over all squares may be larger"


def _square_integral(w, eta, sq, n):
    # the angular extent h of the square cancels in the ratio; only radial parts are kept
    return _endpoint_integral(
        lambda r: w(r) * (eta + 1.0) * (1.0 - r * r) ** eta * r, 1.0 - sq.h, 1.0, n
    )


def carleson_ratio(w: WeightFunction, eta: float, sq: CarlesonSquare, resolution: int = 32) -> float:
    """``(int_S omega dA_eta)(int_S omega^-1 dA_eta) / A_eta(S)^2`` for one square."""
    winv = w.reciprocal()
    one = constant_weight(1.0)
    fwd = _gated(lambda n: _square_integral(w, eta, sq, n), resolution, "Carleson integral of omega")
    inv = _gated(lambda n: _square_integral(winv, eta, sq, n), resolution, "Carleson integral of 1/omega")
    mass = _gated(lambda n: _square_integral(one, eta, sq, n), resolution, "Carleson mass")
    return fwd * inv / (mass * mass)


def bekolle_ratio(w: WeightFunction, eta: float, grid: Optional[Sequence[CarlesonSquare]] = None,
                  resolution: int = 32) -> BekolleResult:
    """Largest Carleson-square ratio over ``grid`` (default 16 x 16)."""
    if eta <= -1:
        raise DomainViolation("eta must exceed -1")
    grid = default_carleson_grid() if grid is None else list(grid)
    if not grid:
        raise ValueError("Carleson grid is empty")
    ratios = np.array([carleson_ratio(w, eta, sq, resolution) for sq in grid])
    k = int(np.argmax(ratios))
    return BekolleResult(sup_ratio=float(ratios[k]), argmax=grid[k], ratios=ratios)


# --------------------------------------------------------------------- kernels

@dataclass(frozen=True)
class BergmanStandard:
    eta: float = 0.0

    def __post_init__(self):
        if not self.eta > -1:
            raise DomainViolation("Bergman eta must exceed -1")


@dataclass(frozen=True)
class Fock:
    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainViolation("Fock alpha must be positive")


@dataclass(frozen=True)
class RadialWeightedBergman:
    weight: WeightFunction
    eta: float = 0.0
    disc_alpha: Optional[float] = None

    def __post_init__(self):
        if not self.eta > -1:
            raise DomainViolation("eta must exceed -1")
        if self.disc_alpha is not None and not 0 < self.disc_alpha < 1:
            raise DomainViolation("disc_alpha must lie in (0, 1)")


KernelSpec = Union[BergmanStandard, Fock, RadialWeightedBergman]


@dataclass(frozen=True)
class NormEstimate:
    """A kernel norm known only up to constants independent of the point."""

    value: float
    note: str = "equivalence constants unknown; estimate, not an exact norm"

    def __float__(self):
        return self.value


def in_domain(spec: KernelSpec, z) -> bool:
    if isinstance(spec, Fock):
        return bool(np.all(np.isfinite(z)))
    return bool(np.all(np.abs(z) < 1.0))


def _check_domain(spec, *pts):
    for p in pts:
        if not np.all(np.isfinite(p)):
            raise NonFinite("point is not finite")
        if not in_domain(spec, p):
            raise DomainViolation(f"point outside the unit disc: {p}")


def kernel_eval(spec: KernelSpec, z, lam):
    """``K_lam(z)``."""
    z = np.asarray(z, dtype=complex)
    lam = np.asarray(lam, dtype=complex)
    if isinstance(spec, RadialWeightedBergman):
        raise NotAvailable("no closed-form kernel for a general radial weight")
    _check_domain(spec, z, lam)
    if isinstance(spec, Fock):
        out = np.exp(spec.alpha * z * np.conj(lam))
    else:
        out = (1.0 - np.conj(lam) * z) ** (-(2.0 + spec.eta))
    return out[()] if out.ndim == 0 else out


def kernel_norm(spec: KernelSpec, lam, resolution: int = 32):
    """``||K_lam||``; a :class:`NormEstimate` for radial weighted Bergman."""
    _check_domain(spec, lam)
    lam = complex(lam)
    a2 = abs(lam) ** 2
    if isinstance(spec, Fock):
        return math.exp(spec.alpha * a2 / 2.0)
    if isinstance(spec, BergmanStandard):
        return (1.0 - a2) ** (-(1.0 + spec.eta / 2.0))
    if spec.disc_alpha is None:
        raise NotAvailable("norm estimate needs disc_alpha")
    mass = disc_integral(spec.weight, DiscSpec(lam, spec.disc_alpha), resolution)
    return NormEstimate(mass ** -0.5)


def normalized_kernel_eval(spec: KernelSpec, z, lam):
    """``k_lam(z) = K_lam(z) / ||K_lam||``."""
    if isinstance(spec, RadialWeightedBergman):
        raise NotAvailable("normalized kernel has no closed form for a radial weight")
    return kernel_eval(spec, z, lam) / kernel_norm(spec, lam)

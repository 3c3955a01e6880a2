"""Independent reference computations used only by the tests.

None of these route through the library's spectral code: they use explicit
loops, polynomial roots, high-precision arithmetic, optimisation from random
starts or plain Riemann sums.
"""
import math

import mpmath
import numpy as np
from scipy.optimize import minimize


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def unit_vectors(rng, d, n):
    X = crandn(rng, d, n)
    return X / np.linalg.norm(X, axis=0)


def loop_analysis(vectors, x):
    return np.array([sum(x[i] * np.conj(f[i]) for i in range(len(x))) for f in vectors])


def loop_synthesis(vectors, c):
    out = np.zeros(len(vectors[0]), dtype=complex)
    for cn, f in zip(c, vectors):
        for i in range(len(f)):
            out[i] += cn * f[i]
    return out


def loop_frame_operator(vectors):
    d = len(vectors[0])
    S = np.zeros((d, d), dtype=complex)
    for f in vectors:
        for i in range(d):
            for j in range(d):
                S[i, j] += f[i] * np.conj(f[j])
    return S


def charpoly_eigenvalues(M):
    """Eigenvalues of a Hermitian matrix as real roots of its characteristic polynomial."""
    coeffs = np.poly(M)
    return np.sort(np.roots(coeffs).real)


def _real_to_complex(v, d):
    return v[:d] + 1j * v[d:]


def rayleigh_extreme(num, den, d, rng, n_random=10_000, n_polish=8, sign=1):
    """min (sign=1) or max (sign=-1) of x*num x / x*den x by sampling then BFGS polishing."""
    X = unit_vectors(rng, d, n_random)
    q_num = np.real(np.sum(X.conj() * (num @ X), axis=0))
    q_den = np.real(np.sum(X.conj() * (den @ X), axis=0))
    ok = q_den > 1e-300
    q = np.full(n_random, np.inf)
    q[ok] = sign * q_num[ok] / q_den[ok]
    best_sampled = sign * np.min(q)
    order = np.argsort(q)[:n_polish]

    def f(v):
        x = _real_to_complex(v, d)
        dn = np.real(np.vdot(x, den @ x))
        if dn <= 1e-300:
            return np.inf
        return sign * np.real(np.vdot(x, num @ x)) / dn

    best = np.inf
    for k in order:
        x0 = X[:, k]
        res = minimize(f, np.concatenate([x0.real, x0.imag]), method="BFGS", options={"gtol": 1e-12})
        best = min(best, res.fun)
    return sign * best, best_sampled


def mp_bergman_kernel(z, lam, eta):
    z, lam = mpmath.mpc(z), mpmath.mpc(lam)
    return complex(mpmath.power(1 - mpmath.conj(lam) * z, -(2 + mpmath.mpf(eta))))


def mp_bergman_norm(lam, eta):
    return float(mpmath.power(1 - abs(mpmath.mpc(lam)) ** 2, -(1 + mpmath.mpf(eta) / 2)))


def mp_fock_kernel(z, lam, alpha):
    return complex(mpmath.exp(mpmath.mpf(alpha) * mpmath.mpc(z) * mpmath.conj(mpmath.mpc(lam))))


def mp_fock_norm(lam, alpha):
    return float(mpmath.exp(mpmath.mpf(alpha) * abs(mpmath.mpc(lam)) ** 2 / 2))


def bergman_partial_norm(lam, eta, N):
    """sqrt of the degree-N partial sum of the binomial series of (1-|lam|^2)^-(2+eta)."""
    x = abs(lam) ** 2
    total, term = 0.0, 1.0
    for k in range(N + 1):
        if k > 0:
            term *= x * (k + 1 + eta) / k
        total += term
    return math.sqrt(total)


def fock_partial_norm(lam, alpha, N):
    x = alpha * abs(lam) ** 2
    total, term = 0.0, 1.0
    for k in range(N + 1):
        if k > 0:
            term *= x / k
        total += term
    return math.sqrt(total)


def carleson_ratio_riemann(w, eta, theta, h, n):
    """2-D midpoint sum over (s, angle) with r = 1 - h s^2 for one Carleson square."""
    s = (np.arange(n) + 0.5) / n
    a = theta - h / 2 + h * (np.arange(n) + 0.5) / n
    r = 1.0 - h * s * s
    jac = 2.0 * h * s / n * (h / n)
    R = r[:, None] * np.ones_like(a)[None, :]
    dens = (eta + 1) * (1 - R * R) ** eta * R * jac[:, None] / np.pi
    om = w(R)
    return np.sum(om * dens) * np.sum(dens / om) / np.sum(dens) ** 2


def random_operator(rng, d, r):
    if r == 0:
        return np.zeros((d, d), dtype=complex)
    return crandn(rng, d, r) @ crandn(rng, r, d)


def random_instance(rng, d, kind):
    """(family vectors, L) for one of: frame, covered, deficient, zero."""
    from atomicframes.frames import FrameFamily

    r = int(rng.integers(0, d + 1))
    if kind == "zero":
        r = 0
    if kind == "deficient":
        r = max(r, 1)
    L = random_operator(rng, d, r)
    if kind == "frame":
        N = int(rng.integers(d, 3 * d + 1))
        T = crandn(rng, d, N)
    elif kind == "covered":
        # spans exactly range(L) plus possibly some extra directions, N may be < d
        N = int(rng.integers(max(r, 1), 2 * d + 1))
        extra = int(rng.integers(0, d - r + 1))
        basis = np.hstack([L @ crandn(rng, d, max(r, 1)), crandn(rng, d, extra)])
        T = basis @ crandn(rng, basis.shape[1], N)
    elif kind == "deficient":
        N = int(rng.integers(1, max(r, 1) + 1))
        k = min(r - 1, N) if r > 1 else 0
        # span misses part of range(L): at most r-1 directions of it plus noise
        T = np.hstack([L @ crandn(rng, d, k), crandn(rng, d, N - k)]) if k else crandn(rng, d, N)
        if r <= N and k == 0 and d > 1:
            T = crandn(rng, d, max(1, r - 1)) if r > 1 else crandn(rng, d, 1)
    else:
        T = crandn(rng, d, int(rng.integers(1, 2 * d + 1)))
    return FrameFamily.from_synthesis(T), L

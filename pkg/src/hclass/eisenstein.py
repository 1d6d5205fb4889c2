"""Floating-point evaluation of Eisenstein series, theta integrals and related quadrature."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .cohen import holomorphic_eisenstein_coefficients, principal_power
from .kloosterman import parity_kappa, plus_zeta_closed, plus_zeta_direct
from .qforms import QuadForm, Truncated, TruncationConfig, automorph_matrix, pell_automorph


@dataclass(frozen=True)
class LatticeSumPlan:
    """Coset pairs (c, d), N | c, gcd(c, d) = 1, one of each +- pair, identity coset once."""

    N: int
    bound: int
    include_identity_coset: bool = True

    def pairs(self):
        if self.include_identity_coset:
            yield (0, 1)
        for c in range(self.N, self.bound + 1, self.N):
            for d in range(-self.bound, self.bound + 1):
                if math.gcd(c, d) == 1:
                    yield (c, d)


def eval_F0(N: int, k: int, tau: complex, cfg: TruncationConfig | None = None) -> Truncated:
    """sum over Gamma_infty \\ Gamma_0(N) of Im(gamma tau)^k, truncated at cfg.lattice_bound."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    cfg = cfg or TruncationConfig()
    B = cfg.lattice_bound
    y = tau.imag
    val = kernels.lattice_sum_F0(N, k, tau.real, y, B)
    # pairs outside the box have |c tau + d| >~ B min(y, 1); integral comparison
    m = min(y, 1.0) * B
    tail = 8.0 * y**k * m ** (2 - 2 * k) / ((2 * k - 2) * N * min(y, 1.0) ** 2)
    return Truncated(val, tail)


@lru_cache(maxsize=64)
def _e2k_coeffs(N: int, k: int, n_max: int) -> np.ndarray:
    series = holomorphic_eisenstein_coefficients(k, N, n_max)
    return np.array([float(series[n]) for n in range(n_max + 1)])


def eval_E2k(N: int, k: int, z: complex, n_max: int = 60) -> tuple[complex, float]:
    """Partial q-sum of the holomorphic Eisenstein series and a geometric tail estimate."""
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    c = _e2k_coeffs(N, k, n_max)
    q = cmath.exp(2j * math.pi * z)
    aq = abs(q)
    powers = q ** np.arange(n_max + 1)
    val = complex(np.sum(c * powers))
    # coefficients grow at most like C n^{2k-1}
    C = max(abs(c[1:]).max() if n_max else 1.0, 1.0)
    r = aq * ((n_max + 2) / (n_max + 1)) ** (2 * k - 1)
    tail = math.inf if r >= 1 else C * (n_max + 1) ** (2 * k - 1) * aq ** (n_max + 1) / (1 - r)
    return val, tail


def theta_integrand(theta: np.ndarray, k: int, patch: float = 1e-3) -> np.ndarray:
    """(e^{2 i theta} - 1)^k / sin(theta), switched to (2i)^k e^{ik theta} sin^{k-1} near 0 and pi."""
    theta = np.asarray(theta, dtype=float)
    raw = (np.exp(2j * theta) - 1) ** k / np.sin(theta)
    near = (theta < patch) | (np.pi - theta < patch)
    smooth = (2j) ** k * np.exp(1j * k * theta) * np.sin(theta) ** (k - 1)
    return np.where(near, smooth, raw)


def theta_integral_quadrature(k: int, n_points: int = 64, panels: int = 16) -> complex:
    """Composite Gauss-Legendre on [0, pi]."""
    if k < 1:
        raise ValueError("k must be positive")
    x, w = np.polynomial.legendre.leggauss(n_points)
    edges = np.linspace(0.0, math.pi, panels + 1)
    total = 0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        total += 0.5 * (hi - lo) * np.sum(w * theta_integrand(t, k))
    return complex(total)


def theta_integral_closed(k: int) -> float:
    return 2 * (-1) ** k * math.sqrt(math.pi) * math.gamma(k) / math.gamma(k + 0.5)


# ------------------------------------------------------------------ incomplete gamma

_EPS = 1e-16


def _gamma_series(s: float, x: float) -> float:
    # lower incomplete gamma, s > 0
    term = 1.0 / s
    total = term
    n = 0
    while abs(term) > _EPS * abs(total):
        n += 1
        term *= x / (s + n)
        total += term
        if n > 10_000:
            break
    return total * math.exp(-x + s * math.log(x))


def _gamma_cf(s: float, x: float) -> float:
    # modified Lentz for the upper continued fraction
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        d = tiny if abs(d) < tiny else d
        c = b + an / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + s * math.log(x)) * h


def _e1_series(x: float) -> float:
    total = 0.0
    term = 1.0
    n = 0
    while True:
        n += 1
        term *= -x / n
        add = term / n
        total += add
        if abs(add) < _EPS * max(abs(total), 1e-300) or n > 500:
            break
    return -0.5772156649015329 - math.log(x) - total


def incomplete_gamma_upper(s: float, x: float) -> float:
    """Gamma(s, x) for real s and x > 0."""
    if x <= 0:
        raise ValueError("x must be positive")
    if x >= s + 1.0 and x >= 1.0:
        return _gamma_cf(s, x)
    if s > 0:
        return math.gamma(s) - _gamma_series(s, x)
    # s <= 0, x < 1: start in (0, 1] (or at 0 via E_1) and recur downward with
    # Gamma(a - 1, x) = (Gamma(a, x) - x^(a-1) e^(-x)) / (a - 1)
    if s == math.floor(s):
        a, g = 0.0, _e1_series(x)
    else:
        a = s + math.ceil(-s)
        g = math.gamma(a) - _gamma_series(a, x)
    while a - 1.0 >= s - 1e-12:
        a -= 1.0
        g = (g - math.exp(-x + a * math.log(x))) / a
    return g


# ------------------------------------------------------------------ plus-space coefficients


def F_plus_coefficient(k: int, N: int, n: int, mode: str = "closed", c_max: int = 20_000) -> complex:
    """Fourier coefficient of the weight 3/2 - k plus-space Eisenstein series at index n."""
    if mode not in ("closed", "direct"):
        raise ValueError("mode must be 'closed' or 'direct'")
    if ((-1) ** (1 - k) * n) % 4 not in (0, 1):
        return 0j
    if mode == "closed":
        K = plus_zeta_closed(k, N, n)
    else:
        K = plus_zeta_direct(parity_kappa(k), N, n, k, c_max).value
    c = (2 / 3) * principal_power(0.5j, k - 1.5) * math.pi * K
    if n < 0:
        c /= math.gamma(k - 0.5)
    return c


# ------------------------------------------------------------------ cycle integrals


def cycle_integral_direct(
    k: int, N: int, Q: QuadForm, cfg: TruncationConfig | None = None, n_points: int = 200, shift: float = 0.0
) -> complex:
    """Integral of E_{2k,N}(z) Q(z,1)^{k-1} dz over one period of the geodesic of Q.

    The period is the arc of hyperbolic length 2 log(eps) whose midpoint lies
    ``shift`` (in hyperbolic length) from the apex of the semicircle.
    """
    D = Q.disc
    t, u = pell_automorph(D)
    gam = automorph_matrix(Q, t, u)
    while gam[1][0] % N:
        gam = _mat_mul(gam, automorph_matrix(Q, t, u))
    eps_len = 2 * math.acosh(abs(gam[0][0] + gam[1][1]) / 2)
    centre = -Q.b / (2 * Q.a)
    radius = math.sqrt(D) / (2 * abs(Q.a))
    lo = 2 * math.atan(math.exp(shift - eps_len / 2))
    hi = 2 * math.atan(math.exp(shift + eps_len / 2))
    x, w = np.polynomial.legendre.leggauss(n_points)
    th = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    total = 0j
    for ti, wi in zip(th, w):
        z = centre + radius * cmath.exp(1j * ti)
        dz = 1j * radius * cmath.exp(1j * ti)
        E, _ = eval_E2k(N, k, z, 80)
        total += wi * E * (Q.a * z * z + Q.b * z + Q.c) ** (k - 1) * dz
    return 0.5 * (hi - lo) * total


def _mat_mul(g, h):
    (a, b), (c, d) = g
    (e, f), (p, q) = h
    return ((a * e + b * p, a * f + b * q), (c * e + d * p, c * f + d * q))


__all__ = [
    "F_plus_coefficient",
    "LatticeSumPlan",
    "cycle_integral_direct",
    "eval_E2k",
    "eval_F0",
    "incomplete_gamma_upper",
    "theta_integral_closed",
    "theta_integral_quadrature",
    "theta_integrand",
]

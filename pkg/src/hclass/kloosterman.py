"""Half-integral weight Kloosterman sums and the associated zeta functions.

Sign convention for the plus-space zeta function at index n: the
decomposition is t m^2 = (-1)^(kappa - 1/2) n, so t m^2 = -n in weight 3/2
(k even) and t m^2 = n in weight 1/2 (k odd).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple

import numpy as np

from . import kernels
from .arith import (
    divisors,
    factorize,
    fundamental_split,
    is_squarefree,
    jacobi,
    kronecker_symbol,
    moebius,
    prime_factors,
    t_sum,
    valuation,
)
from .rational import (
    GaussianRational,
    PiRational,
    dirichlet_L_numeric,
    zeta_even_positive,
)


def kappa_twice(kappa) -> int:
    """2*kappa as an odd integer; accepts Fraction, float, int pairs or strings like '3/2'."""
    k2 = Fraction(kappa) * 2
    if k2.denominator != 1 or k2.numerator % 2 == 0:
        raise ValueError(f"kappa must lie in 1/2 + Z, got {kappa}")
    return int(k2)


def parity_kappa(k: int) -> Fraction:
    """Weight paired with k: 1/2 for odd k, 3/2 for even k."""
    return Fraction(1, 2) if k % 2 else Fraction(3, 2)


# ------------------------------------------------------------------ finite sums


def half_integral_kloosterman(kappa, m: int, n: int, c: int) -> complex:
    if c <= 0 or c % 4:
        raise ValueError("modulus must be a positive multiple of 4")
    return kernels.kloosterman_brute(kappa_twice(kappa) % 4, m, n, c)


def ramanujan_sum(c: int, n: int) -> int:
    g = gcd(c, n) if n else c
    return sum(moebius(c // d) * d for d in divisors(g) if c % d == 0)


def unit_kloosterman(m: int, n: int, c: int):
    """Classical sum; an exact int when m = 0 (Ramanujan sum)."""
    if c < 1:
        raise ValueError("c must be positive")
    if m == 0:
        return ramanujan_sum(c, n)
    if c == 1:
        return complex(1.0)
    return kernels.unit_kloosterman_brute(m, n, c)


def _gauss_unit(p: int) -> complex:
    return complex(math.sqrt(p)) if p % 4 == 1 else complex(0.0, math.sqrt(p))


def gauss_prime_power(p: int, e: int, m: int) -> complex:
    """sum over units x mod p^e of (x/p)^e e(m x / p^e), odd p, closed form."""
    q = p**e
    m %= q
    if e % 2 == 0:
        return complex(ramanujan_sum(q, m))
    if m == 0 or valuation(m, p) != e - 1:
        return 0j
    return p ** (e - 1) * jacobi(m // p ** (e - 1), p) * _gauss_unit(p)


@lru_cache(maxsize=None)
def _two_part(a: int, m2: int, flip: bool, q: int) -> complex:
    mod = 1 << a
    r = np.arange(1, mod, 2, dtype=np.int64)
    val = np.ones(len(r))
    if a % 2:
        val = np.where((r % 8 == 3) | (r % 8 == 5), -1.0, 1.0)
    unit = np.where(r % 4 == 3, 1j**q, 1.0)
    if flip:
        unit = unit * np.where(r % 4 == 3, -1.0, 1.0)
    ph = np.exp(2j * np.pi * ((m2 * r) % mod) / mod)
    return complex(np.sum(val * unit * ph))


def kloosterman_zero_factored(kappa, n: int, c: int, fac=None) -> complex:
    """K_kappa(0, n; c) through the CRT splitting of the modulus.

    The 2-part is summed directly (and cached); odd prime powers use the
    classical evaluation of quadratic Gauss sums.
    """
    if c <= 0 or c % 4:
        raise ValueError("modulus must be a positive multiple of 4")
    q = kappa_twice(kappa) % 4
    if fac is None:
        fac = factorize(c)
    a = 0
    odd = []
    for p, e in fac:
        if p == 2:
            a = e
        else:
            odd.append((p, e))
    co = c >> a
    u = pow(co, -1, 1 << a) if co > 1 else 1
    total = _two_part(a, (n * u) % (1 << a), co % 4 == 3, q)
    for p, e in odd:
        if total == 0:
            break
        g = gauss_prime_power(p, e, n)
        if g == 0:
            return 0j
        if e % 2:
            g *= jacobi(c // p**e, p)
        total *= g
    return total


# ------------------------------------------------------------------ level zeta functions


def _sigma(s: int, r: int) -> Fraction:
    return sum((Fraction(d) ** s for d in divisors(r)), Fraction(0))


def zeta_K_level(N: int, n: int, k: int) -> PiRational:
    """Exact K_N(0, n; 2k) = rational / pi^(2k)."""
    if N < 1 or not is_squarefree(N):
        raise ValueError("N must be squarefree")
    if n < 1:
        raise ValueError("n must be positive")
    if k < 2:
        raise ValueError("k must be at least 2")
    s = 2 * k
    acc = Fraction(0)
    for d in divisors(N):
        if n % (N // d) == 0:
            acc += moebius(d) * Fraction(1, d) * _sigma(1 - s, n * d // N)
    acc *= Fraction(N) ** (1 - s)
    for p in prime_factors(N) if N > 1 else ():
        acc /= 1 - Fraction(1, p**s)
    return PiRational(acc, 0) / zeta_even_positive(s)


def zeta_K_constants(N: int, k: int, which: str) -> float:
    """K_N(0,0;2k) ('level-infty') or the coprime-modulus variant ('modified')."""
    if N < 1 or not is_squarefree(N):
        raise ValueError("N must be squarefree")
    s = 2 * k
    base = dirichlet_L_numeric(s - 1, 1) / float(zeta_even_positive(s))
    ps = prime_factors(N) if N > 1 else []
    if which in ("level-infty", "level"):
        for p in ps:
            base *= (p - 1) / (p**s - 1)
    elif which == "modified":
        for p in ps:
            base *= (1 - p ** (1 - s)) / (1 - p ** (-s))
    else:
        raise ValueError("which must be 'level-infty' or 'modified'")
    return base


# ------------------------------------------------------------------ local factors


def local_factor_direct(kappa, p: int, j: int, n: int) -> complex:
    """The epsilon-normalised local Gauss sum a_kappa(p^j, n), summed directly."""
    q = p**j
    k2 = kappa_twice(kappa)
    r = np.arange(1, q + 1, dtype=np.int64)
    ph = np.exp(2j * np.pi * ((n * r) % q) / q)
    if p == 2:
        r_odd = r[r % 2 == 1]
        sym = np.array([kronecker_symbol(q, int(x)) for x in r_odd], dtype=float)
        unit = np.where(r_odd % 4 == 3, 1j ** (k2 % 4), 1.0)
        return complex(np.sum(sym * unit * ph[r % 2 == 1]))
    sym = np.array([kronecker_symbol(int(x), q) for x in r], dtype=float)
    eps = 1 if q % 4 == 1 else 1j
    s = complex(np.sum(sym * ph))
    return s / eps if k2 % 4 == 1 else s * eps


def _a4_exact(k2: int, n: int) -> GaussianRational:
    # r in {1, 3}: i^n + i^(k2) * (-i)^n, all powers of i
    def ipow(e):
        return [GaussianRational(1), GaussianRational(0, 1), GaussianRational(-1), GaussianRational(0, -1)][e % 4]

    return ipow(n) + ipow(k2) * ipow(3 * n)


def local_factor_closed(k: int, p: int, n: int):
    """A_k(p, n) in closed form: a Fraction for odd p, a GaussianRational for p = 2."""
    if k < 2:
        raise ValueError("k must be at least 2")
    x = 1 - 2 * k
    P = Fraction(p)
    if p == 2:
        pre = GaussianRational(1, (-1) ** k) * Fraction(1, 2 ** (2 * k + 1))
        if n == 0:
            return GaussianRational(1, (-1) ** k) * Fraction(1, 2 ** (2 * k + 1) - 4)
        v = valuation(n, 2)
        if v % 2:
            h = (v - 1) // 2
            return pre * ((1 - P ** (x * h)) / (1 - P**x) - P ** (x * h))
        h = v // 2
        u = ((-1) ** k * n) // 2**v
        geo = (1 - P ** (x * h)) / (1 - P**x)
        if u % 4 == 3:
            return pre * (geo - P ** (x * h))
        return pre * (geo + P ** (x * h) * (1 + P ** (1 - k) * kronecker_symbol(u, 2)))
    if n == 0:
        return Fraction(p - 1, p * (p ** (2 * k - 1) - 1))
    v = valuation(n, p)
    head = (p - 1) / (P * (P ** (2 * k - 1) - 1))
    if v % 2:
        return head * (1 - P ** (x * (v - 1) // 2)) - P ** ((x * (v + 1)) // 2 - 1)
    u = ((-1) ** k * n) // p**v
    return head * (1 - P ** (x * v // 2)) + kronecker_symbol(u, p) * P ** ((x * (v + 1) - 1) // 2)


# ------------------------------------------------------------------ plus-space zeta


class SeriesValue(NamedTuple):
    value: complex
    tail_bound: float
    terms: int


def plus_tail_bound(N: int, k: int, c_max: int) -> float:
    """Bound for sum_{c > c_max} 2 (4Nc)^(1/2 - k) via the integral test."""
    if c_max < 1:
        return math.inf
    return 2.0 * (4 * N) ** (0.5 - k) * c_max ** (1.5 - k) / (k - 1.5)


@lru_cache(maxsize=8)
def _moduli(N: int, c_max: int) -> tuple:
    """(4Nc, weight, factorisation) for c = 1..c_max, shared across indices n."""
    base = dict(factorize(4 * N))
    out = []
    for c in range(1, c_max + 1):
        fac = dict(base)
        if c > 1:
            for p, e in factorize(c):
                fac[p] = fac.get(p, 0) + e
        out.append((4 * N * c, 2 if c % 2 else 1, tuple(sorted(fac.items()))))
    return tuple(out)


def plus_zeta_direct(kappa, N: int, n: int, k: int, c_max: int) -> SeriesValue:
    """Truncated series sum_{c <= c_max} (1 + (4/c)) K_kappa(0,n;4Nc) / (4Nc)^(k+1/2)."""
    if c_max < 1:
        return SeriesValue(0j, plus_tail_bound(N, k, c_max), 0)
    s = k + 0.5
    parts = []
    for C, w, fac in _moduli(N, c_max):
        K = kloosterman_zero_factored(kappa, n, C, fac)
        if K:
            parts.append(w * K * C ** (-s))
    re = math.fsum(z.real for z in parts)
    im = math.fsum(z.imag for z in parts)
    return SeriesValue(complex(re, im), plus_tail_bound(N, k, c_max), c_max)


def _l_ratio(num: float, k: int, fourN: int) -> float:
    den = float(zeta_even_positive(2 * k))
    for p in prime_factors(fourN):
        den *= 1 - p ** (-2 * k)
    return num / den


def plus_local_product(k: int, N: int, n: int):
    """Exact 2-adic and odd local data of the closed form (GaussianRational)."""
    k2 = kappa_twice(parity_kappa(k))
    loc2 = local_factor_closed(k, 2, -n).conjugate() + _a4_exact(k2, n) * Fraction(1, 2 ** (2 * k + 1))
    prod = Fraction(1)
    for p in prime_factors(N) if N > 1 else ():
        prod *= local_factor_closed(k, p, -n)
    return loc2 * prod


def plus_zeta_closed(k: int, N: int, n: int, kappa=None, c_max: int = 20000) -> complex:
    """Plus-space Kloosterman zeta value at s = k + 1/2 from the Euler product.

    kappa defaults to the weight paired with the parity of k.  Forcing the
    other weight has no Euler product here; the direct series (truncated at
    ``c_max``) is returned instead.
    """
    if N < 1 or N % 2 == 0 or not is_squarefree(N):
        raise ValueError("N must be odd and squarefree")
    if k < 2:
        raise ValueError("k must be at least 2")
    if kappa is not None and Fraction(kappa) % 2 != parity_kappa(k):
        return plus_zeta_direct(kappa, N, n, k, c_max).value
    fourN = 4 * N
    if n == 0:
        ratio = _l_ratio(dirichlet_L_numeric(2 * k - 1, 1, M=fourN), k, fourN)
        return ratio * complex(plus_local_product(k, N, 0))
    sign = 1 if k % 2 else -1
    dec = fundamental_split(sign * n)
    if dec is None:
        return 0j
    ratio = _l_ratio(dirichlet_L_numeric(k, dec.t, M=fourN), k, fourN)
    T = t_sum(fourN, 1 - k, dec.t, dec.m)
    return ratio * complex(plus_local_product(k, N, n) * T)


def kohnen_plus_sum(k: int, D: int, c: int) -> float:
    """Kohnen's plus-space sum at (0, D; c), real by construction."""
    if c < 1:
        raise ValueError("c must be positive")
    w = 2 if c % 2 else 1
    z = (1 - (-1) ** k * 1j) * w / (4 * c) * half_integral_kloosterman(Fraction(2 * k + 1, 2), 0, D, 4 * c)
    return z.real


__all__ = [
    "SeriesValue",
    "gauss_prime_power",
    "half_integral_kloosterman",
    "kappa_twice",
    "kloosterman_zero_factored",
    "kohnen_plus_sum",
    "local_factor_closed",
    "local_factor_direct",
    "parity_kappa",
    "plus_local_product",
    "plus_tail_bound",
    "plus_zeta_closed",
    "plus_zeta_direct",
    "ramanujan_sum",
    "unit_kloosterman",
    "zeta_K_constants",
    "zeta_K_level",
]

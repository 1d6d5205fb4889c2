"""Elementary arithmetic functions and the level-structured divisor sums.

Everything here is exact integer/rational arithmetic.  Factorisation uses a
smallest-prime-factor table built lazily up to ``SIEVE_LIMIT`` and falls back
to trial division by the tabulated primes above it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

SIEVE_LIMIT = 10**6

_spf: np.ndarray | None = None
_primes: np.ndarray | None = None


def _build_sieve() -> None:
    global _spf, _primes
    n = SIEVE_LIMIT
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.nonzero(spf == 0)[0]
    spf[idx] = idx
    spf[0] = 0
    spf[1] = 1
    _spf = spf
    _primes = idx[idx >= 2]


def spf_table() -> np.ndarray:
    """Smallest-prime-factor table up to ``SIEVE_LIMIT`` (index 1 maps to 1)."""
    if _spf is None:
        _build_sieve()
    return _spf


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``|n|`` as sorted ``((p, e), ...)``."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    spf = spf_table()
    out: dict[int, int] = {}
    if n > SIEVE_LIMIT:
        for p in _primes:
            p = int(p)
            if p * p > n:
                break
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
            if n <= SIEVE_LIMIT:
                break
        if n > SIEVE_LIMIT:
            # no prime factor below the sieve bound remains, so n is prime
            out[n] = out.get(n, 0) + 1
            n = 1
    while n > 1:
        p = int(spf[n])
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    return tuple(sorted(out.items()))


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def valuation(n: int, p: int) -> int:
    """p-adic valuation; raises for n = 0 (callers treat 0 separately)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**j for d in ds for j in range(e + 1)]
    return sorted(ds)


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n))


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius needs n >= 1")
    fs = factorize(n) if n > 1 else ()
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def euler_phi(n: int) -> int:
    r = n
    for p, _ in factorize(n):
        r -= r // p
    return r


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive modulus")
    a %= n
    r = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                r = -r
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            r = -r
        a %= n
    return r if n == 1 else 0


def kronecker_symbol(a: int, n: int) -> int:
    """Fully extended Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    r = 1
    if n < 0:
        n = -n
        if a < 0:
            r = -r
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            r = -r
    if n == 1:
        return r
    return r * jacobi(a, n)


def epsilon_factor(d: int) -> complex:
    """The theta-multiplier unit: 1 for d = 1 mod 4, i for d = 3 mod 4."""
    if d % 2 == 0:
        raise ValueError("epsilon_factor is defined for odd d only")
    return 1 + 0j if d % 4 == 1 else 1j


def is_fundamental(t: int) -> bool:
    """True for fundamental discriminants; t = 1 counts as the trivial case."""
    if t == 1:
        return True
    if t == 0:
        return False
    if t % 4 == 1:
        return is_squarefree(t)
    if t % 4 == 0:
        u = t // 4
        return u % 4 in (2, 3) and is_squarefree(u)
    return False


@dataclass(frozen=True)
class FundamentalDecomposition:
    t: int
    m: int


def fundamental_split(x: int) -> FundamentalDecomposition | None:
    """Write ``x = t m^2`` with t fundamental (or 1); None if impossible."""
    if x == 0:
        return None
    sign = -1 if x < 0 else 1
    core, sq = sign, 1
    for p, e in factorize(x) if abs(x) > 1 else ():
        sq *= p ** (e // 2)
        if e % 2:
            core *= p
    # core is squarefree with the sign of x
    if core % 4 == 1:
        return FundamentalDecomposition(core, sq)
    if sq % 2 == 0 and (core % 4) in (2, 3):
        return FundamentalDecomposition(4 * core, sq // 2)
    return None


def fundamental_decomposition(k: int, n: int) -> FundamentalDecomposition | None:
    """(t, m) with (-1)^k n = t m^2, t fundamental or 1."""
    if n < 1:
        raise ValueError("fundamental_decomposition needs n >= 1")
    return fundamental_split((-1) ** k * n)


def divisor_sigma(ell: int, N: int, s: int, r: int) -> Fraction:
    """Sum of d^s over d | r with gcd(d, ell) = 1 and gcd(r/d, N/ell) = 1."""
    if N % ell:
        raise ValueError("ell must divide N")
    if r < 1:
        raise ValueError("r must be positive")
    co = N // ell
    total = Fraction(0)
    for d in divisors(r):
        if gcd(d, ell) == 1 and gcd(r // d, co) == 1:
            total += Fraction(d) ** s
    return total


def t_sum(fourN: int, s: int, t: int, m: int) -> Fraction:
    """The twisted divisor sum over d | m coprime to 4N (gcd filter always on)."""
    if fourN % 4:
        raise ValueError("first argument must be divisible by 4")
    total = Fraction(0)
    for d in divisors(m):
        if gcd(d, fourN) != 1:
            continue
        mu = moebius(d)
        if mu == 0:
            continue
        total += mu * kronecker_symbol(t, d) * Fraction(d) ** (s - 1) * divisor_sigma(
            fourN, fourN, 2 * s - 1, m // d
        )
    return total

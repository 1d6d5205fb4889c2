"""Pure-Python/numpy versions of the compiled kernels (same signatures)."""

from __future__ import annotations

import numpy as np

from .arith import jacobi


def _units(c: int) -> np.ndarray:
    r = np.arange(c, dtype=np.int64)
    return r[np.gcd(r, c) == 1]


def kloosterman_brute(k2: int, m: int, n: int, c: int) -> complex:
    r = _units(c)
    r = r[r % 2 == 1]
    sym = np.array([jacobi(c, int(x)) for x in r], dtype=np.float64)
    if m:
        rs = np.array([pow(int(x), -1, c) for x in r], dtype=np.int64)
    else:
        rs = np.zeros_like(r)
    ph = (m * rs + n * r) % c
    z = np.exp(2j * np.pi * ph / c)
    unit = np.where(r % 4 == 3, 1j ** (k2 % 4), 1.0)
    return complex(np.sum(sym * unit * z))


def unit_kloosterman_brute(m: int, n: int, c: int) -> complex:
    r = _units(c)
    if m:
        rs = np.array([pow(int(x), -1, c) if c > 1 else 0 for x in r], dtype=np.int64)
    else:
        rs = np.zeros_like(r)
    ph = (m * rs + n * r) % c
    return complex(np.sum(np.exp(2j * np.pi * ph / c)))


def lattice_sum_F0(N: int, k: int, x: float, y: float, bound: int) -> float:
    d = np.arange(-bound, bound + 1, dtype=np.int64)
    acc = 0.0
    for c in range(N, bound + 1, N):
        dd = d[np.gcd(c, d) == 1].astype(np.float64)
        acc += float(np.sum(((c * x + dd) ** 2 + (c * y) ** 2) ** (-k)))
    return y**k * (1.0 + acc)


def sqrt_count_scan(a: int, D: int) -> int:
    m = 4 * a
    b = np.arange(2 * a, dtype=np.int64)
    return int(np.count_nonzero((b * b - D) % m == 0))

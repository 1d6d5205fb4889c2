"""Binary quadratic forms with level structure.

Forms act on the right: ``(Q o g)(x, y) = Q(g (x, y)^T)``.  Gamma_0(N) classes of
definite forms with N | a are listed through SL_2(Z)-reduced representatives R
together with the Aut(R)-orbits of roots of R on P^1(Z/N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt
from typing import NamedTuple

from .arith import factorize, kronecker_symbol, spf_table
from .kernels import sqrt_count_scan

Matrix = tuple[tuple[int, int], tuple[int, int]]
IDENTITY: Matrix = ((1, 0), (0, 1))


def mat_mul(g: Matrix, h: Matrix) -> Matrix:
    (a, b), (c, d) = g
    (e, f), (p, q) = h
    return ((a * e + b * p, a * f + b * q), (c * e + d * p, c * f + d * q))


def mat_inv(g: Matrix) -> Matrix:
    (a, b), (c, d) = g
    return ((d, -b), (-c, a))


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y=1):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, g: Matrix) -> "QuadForm":
        (p, q), (r, s) = g
        a, b, c = self.a, self.b, self.c
        return QuadForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def __neg__(self):
        return QuadForm(-self.a, -self.b, -self.c)

    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def heegner_point(self) -> complex:
        D = self.disc
        if D >= 0:
            raise ValueError("Heegner points need a definite form")
        return complex(-self.b / (2 * self.a), math.sqrt(-D) / (2 * abs(self.a)))

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c]


@dataclass(frozen=True)
class HeegnerClass:
    representative: QuadForm
    stabilizer_order: int
    point: complex

    def as_dict(self) -> dict:
        return {
            "form": self.representative.as_list(),
            "stabilizer_order": self.stabilizer_order,
            "point": [self.point.real, self.point.imag],
        }


@dataclass(frozen=True)
class TruncationConfig:
    a_max: int = 50_000
    lattice_bound: int = 3000
    c_max: int = 20_000
    tol: float = 1e-9
    report_tails: bool = True

    def __post_init__(self):
        if min(self.a_max, self.lattice_bound, self.c_max) < 1 or self.tol <= 0:
            raise ValueError("truncation settings must be positive")


class Truncated(NamedTuple):
    value: float
    tail_bound: float


# ------------------------------------------------------------------ square roots mod 4a


def sqrt_count(a: int, D: int) -> int:
    """#{0 <= b < 2a : b^2 = D mod 4a} by exhaustive scan."""
    if a < 1:
        raise ValueError("a must be positive")
    return sqrt_count_scan(a, D)


@lru_cache(maxsize=None)
def _roots_mod_2power(e: int, D: int) -> int:
    m = 1 << e
    D %= m
    return sum(1 for x in range(m) if (x * x - D) % m == 0)


def _roots_mod_odd(p: int, e: int, D: int) -> int:
    if D == 0:
        return p ** (e // 2)
    v, Dp = 0, D
    while Dp % p == 0:
        Dp //= p
        v += 1
    if e <= v:
        return p ** (e // 2)
    if v % 2:
        return 0
    return (1 + kronecker_symbol(Dp, p)) * p ** (v // 2)


def sqrt_count_fast(a: int, D: int) -> int:
    """Same count through the Chinese remainder theorem (half the roots mod 4a)."""
    v2 = (a & -a).bit_length() - 1
    total = _roots_mod_2power(v2 + 2, D % (1 << (v2 + 2)))
    if total == 0:
        return 0
    for p, e in factorize(a >> v2) if a >> v2 > 1 else ():
        total *= _roots_mod_odd(p, e, D)
        if total == 0:
            return 0
    return total // 2


def sqrt_count_series(k: int, N: int, D: int, a_max: int) -> float:
    """sum over N | a <= a_max of sqrt_count(a, D) / a^k."""
    spf = spf_table()
    terms = []
    for a in range(N, a_max + 1, N):
        x = a
        v2 = 0
        while x % 2 == 0:
            x //= 2
            v2 += 1
        cnt = _roots_mod_2power(v2 + 2, D % (1 << (v2 + 2)))
        while x > 1 and cnt:
            p = int(spf[x])
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            cnt *= _roots_mod_odd(p, e, D)
        if cnt:
            terms.append(cnt / 2 / a**k)
    return math.fsum(terms)


def unfolding_prefactor(k: int, D: int) -> float:
    return D ** (k - 0.5) * (-1) ** k * math.sqrt(math.pi) * math.gamma(k) / (2 ** (2 * k - 2) * math.gamma(k + 0.5))


def real_trace_unfolded(k: int, N: int, D: int, cfg: TruncationConfig | None = None) -> Truncated:
    """Unfolded real quadratic trace of the level N weight 2k Eisenstein series."""
    cfg = cfg or TruncationConfig()
    if k < 2:
        raise ValueError("k must be at least 2")
    if D < 1:
        raise ValueError("D must be positive")
    pre = unfolding_prefactor(k, D)
    if D % 4 in (2, 3):
        return Truncated(0.0, 0.0)
    S = sqrt_count_series(k, N, D, cfg.a_max)
    A = cfg.a_max
    # integral estimate of sum_{a > A} 2 d(a) a^{-k}
    tail = 2 * A ** (1 - k) * (math.log(A) / (k - 1) + 1 / (k - 1) ** 2 + 1.1544 / (k - 1))
    return Truncated(pre * S, abs(pre) * tail)


# ------------------------------------------------------------------ reduction and equivalence


def _T(n: int) -> Matrix:
    return ((1, n), (0, 1))


_S: Matrix = ((0, -1), (1, 0))


def sl2_reduce(Q: QuadForm) -> tuple[QuadForm, Matrix]:
    """Reduced form R and g in SL_2(Z) with Q o g = R."""
    if Q.disc >= 0:
        raise ValueError("reduction is implemented for definite forms only")
    if Q.a <= 0:
        raise ValueError("form must be positive definite")
    g = IDENTITY
    R = Q
    while True:
        n = (R.a - R.b) // (2 * R.a)
        if n:
            R = R.act(_T(n))
            g = mat_mul(g, _T(n))
        if R.a > R.c:
            R = R.act(_S)
            g = mat_mul(g, _S)
            continue
        if R.a == R.c and R.b < 0:
            R = R.act(_S)
            g = mat_mul(g, _S)
        return R, g


@lru_cache(maxsize=None)
def automorphisms(R: QuadForm) -> tuple[Matrix, ...]:
    """Proper automorphisms of a reduced definite form (entries of size <= 2 suffice)."""
    out = []
    for p, q, r, s in product(range(-2, 3), repeat=4):
        if p * s - q * r == 1:
            g = ((p, q), (r, s))
            if R.act(g) == R:
                out.append(g)
    return tuple(sorted(out))


def gamma0_equivalent(Q1: QuadForm, Q2: QuadForm, N: int) -> bool:
    if Q1.disc != Q2.disc:
        raise ValueError("forms have different discriminants")
    if Q1.disc >= 0:
        raise ValueError("only definite forms are supported")
    if (Q1.a > 0) != (Q2.a > 0):
        return False
    if Q1.a < 0:
        Q1, Q2 = -Q1, -Q2
    R1, g1 = sl2_reduce(Q1)
    R2, g2 = sl2_reduce(Q2)
    if R1 != R2:
        return False
    g2i = mat_inv(g2)
    for a in automorphisms(R1):
        gam = mat_mul(mat_mul(g1, a), g2i)
        if gam[1][0] % N == 0:
            return True
    return False


# ------------------------------------------------------------------ Heegner classes


def reduced_forms(D: int) -> list[QuadForm]:
    """All reduced positive definite forms of discriminant D < 0, primitive or not."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append(QuadForm(a, b, c))
        a += 1
    return out


def _projective_points(N: int) -> list[tuple[int, int]]:
    """Canonical representatives of P^1(Z/N)."""
    units = [u for u in range(1, N + 1) if gcd(u, N) == 1] if N > 1 else [1]
    seen = set()
    reps = []
    for x in range(N):
        for y in range(N):
            if gcd(gcd(x, y), N) != 1 and N > 1:
                continue
            key = min(((u * x) % N, (u * y) % N) for u in units)
            if key not in seen:
                seen.add(key)
                reps.append(key)
    return sorted(reps) if N > 1 else [(0, 0)]


def _canon(v: tuple[int, int], N: int) -> tuple[int, int]:
    if N == 1:
        return (0, 0)
    return min(((u * v[0]) % N, (u * v[1]) % N) for u in range(1, N) if gcd(u, N) == 1)


def _lift(v: tuple[int, int], N: int) -> Matrix:
    """Some g in SL_2(Z) whose first column is congruent to v mod N."""
    x, y = v
    if N == 1:
        return IDENTITY
    for t in range(0, 10 * N * N + 1):
        for xx in (x + t * N, x - t * N):
            for s in range(0, N * N + 1):
                yy = y + s * N
                if gcd(xx, yy) == 1:
                    _, u, w = _egcd(xx, yy)
                    # u xx + w yy = 1  ->  [[xx, -w], [yy, u]]
                    return ((xx, -w), (yy, u))
    raise RuntimeError("no coprime lift found")


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def enumerate_heegner_classes(N: int, D: int, h: int | None = None, include_negative: bool = False) -> list[HeegnerClass]:
    """Gamma_0(N) classes of forms of discriminant D < 0 with N | a.

    Positive definite classes are returned sorted by (a, b, c).  With
    ``include_negative`` every class is followed by its negative, which has
    the same Heegner point and stabiliser.
    """
    if D >= 0:
        raise ValueError("D must be negative")
    if D % 4 not in (0, 1):
        return []
    classes = []
    for R in reduced_forms(D):
        auts = automorphisms(R)
        roots = [v for v in _projective_points(N) if R(v[0], v[1]) % N == 0]
        seen = set()
        for v in roots:
            if v in seen:
                continue
            orbit = set()
            fix = 0
            for g in auts:
                w = _canon((g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]), N)
                orbit.add(w)
                if w == v:
                    fix += 1
            seen |= orbit
            Q = _normalize_gamma_infty(R.act(_lift(v, N)))
            classes.append(HeegnerClass(Q, fix // 2, Q.heegner_point()))
    if h is not None:
        classes = [c for c in classes if (c.representative.b - h) % (2 * N) == 0]
    classes.sort(key=lambda c: (c.representative.a, c.representative.b, c.representative.c))
    if include_negative:
        out = []
        for c in classes:
            out.append(c)
            out.append(HeegnerClass(-c.representative, c.stabilizer_order, c.point))
        return out
    return classes


def _normalize_gamma_infty(Q: QuadForm) -> QuadForm:
    # translate b into (-a, a] with T^n, which lies in Gamma_0(N)
    n = (Q.a - Q.b) // (2 * Q.a)
    return Q.act(_T(n)) if n else Q


def enumerate_heegner_candidates(N: int, D: int, a_bound: int | None = None) -> list[QuadForm]:
    """Independent listing: scan N | a <= a_bound, b mod 2a, and keep one form per class."""
    if D >= 0:
        raise ValueError("D must be negative")
    if a_bound is None:
        a_bound = N * math.ceil(math.sqrt(-D / 3)) + N
    reps: list[QuadForm] = []
    for a in range(N, a_bound + 1, N):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            Q = QuadForm(a, b, (b * b - D) // (4 * a))
            if not any(gamma0_equivalent(Q, R, N) for R in reps):
                reps.append(Q)
    return reps


def imag_trace(k: int, N: int, D_lit: int, cfg: TruncationConfig | None = None, doubled: bool = False) -> float:
    """Sum over Heegner classes of F_0(tau_Q)/stabiliser; ``doubled`` counts both signs of a."""
    from .eisenstein import eval_F0

    cfg = cfg or TruncationConfig()
    total = []
    for cls in enumerate_heegner_classes(N, D_lit):
        total.append(eval_F0(N, k, cls.point, cfg).value / cls.stabilizer_order)
    s = math.fsum(total)
    return 2 * s if doubled else s


# ------------------------------------------------------------------ Pell


def pell_automorph(D: int) -> tuple[int, int]:
    """Least (t, u) with u > 0 and t^2 - D u^2 = 4."""
    if D <= 0 or isqrt(D) ** 2 == D:
        raise ValueError("D must be a positive non-square")
    if D % 4 not in (0, 1):
        raise ValueError("D must be a discriminant")
    u = 1
    while True:
        t2 = 4 + D * u * u
        t = isqrt(t2)
        if t * t == t2:
            return t, u
        u += 1


def automorph_matrix(Q: QuadForm, t: int, u: int) -> Matrix:
    return (((t - Q.b * u) // 2, -Q.c * u), (Q.a * u, (t + Q.b * u) // 2))


__all__ = [
    "HeegnerClass",
    "QuadForm",
    "Truncated",
    "TruncationConfig",
    "automorph_matrix",
    "automorphisms",
    "enumerate_heegner_candidates",
    "enumerate_heegner_classes",
    "gamma0_equivalent",
    "imag_trace",
    "pell_automorph",
    "real_trace_unfolded",
    "reduced_forms",
    "sl2_reduce",
    "sqrt_count",
    "sqrt_count_fast",
    "sqrt_count_series",
    "unfolding_prefactor",
]

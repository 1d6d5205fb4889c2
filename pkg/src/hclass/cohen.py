"""Generalised Hurwitz class numbers and the q-expansions built from them."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import divisors, fundamental_split, is_squarefree, kronecker_symbol, moebius, prime_factors, divisor_sigma
from .kloosterman import zeta_K_level
from .rational import PiRational, dirichlet_L_nonpositive, incomplete_L_nonpositive, zeta_even_positive


@dataclass
class QSeries:
    """Truncated q-expansion with exact coefficients; missing indices are zero."""

    n_max: int
    coefficients: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for n, c in self.coefficients.items():
            if n < 0 or n > self.n_max:
                raise ValueError(f"index {n} outside 0..{self.n_max}")
            c = Fraction(c)
            if c:
                clean[int(n)] = c
        self.coefficients = clean

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.n_max:
            raise IndexError(n)
        return self.coefficients.get(n, Fraction(0))

    def __add__(self, other: "QSeries") -> "QSeries":
        m = min(self.n_max, other.n_max)
        return QSeries(m, {n: self[n] + other[n] for n in range(m + 1)})

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries(self.n_max, {n: c * v for n, v in self.coefficients.items()})

    __rmul__ = scale

    def support(self) -> list[int]:
        return sorted(self.coefficients)

    def rows(self):
        for n in range(self.n_max + 1):
            c = self[n]
            yield n, c.numerator, c.denominator

    def to_csv(self) -> str:
        lines = ["n,numerator,denominator"]
        lines += [f"{n},{a},{b}" for n, a, b in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([{"n": n, "value": f"{a}/{b}" if b != 1 else str(a)} for n, a, b in self.rows()], indent=2)


def _check_level(ell: int, N: int) -> None:
    if N < 1 or N % 2 == 0 or not is_squarefree(N):
        raise ValueError("N must be odd and squarefree")
    if ell < 1 or N % ell:
        raise ValueError("ell must divide N")


@lru_cache(maxsize=None)
def hurwitz_class_number(k: int, ell: int, N: int, n: int) -> Fraction:
    """H_{k,ell,N}(n)."""
    if k < 2:
        raise ValueError("k must exceed 1")
    _check_level(ell, N)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return incomplete_L_nonpositive(2 * k, 1, N) if ell == N else Fraction(0)
    dec = fundamental_split((-1) ** k * n)
    if dec is None:
        return Fraction(0)
    t, m = dec.t, dec.m
    S = Fraction(0)
    for a in divisors(m):
        if gcd(a, N) != 1:
            continue
        mu = moebius(a)
        if mu:
            S += mu * kronecker_symbol(t, a) * Fraction(a) ** (k - 1) * divisor_sigma(ell, N, 2 * k - 1, m // a)
    if ell == N:
        return incomplete_L_nonpositive(k, t, N) * S
    fac = Fraction(1)
    for p in prime_factors(N // ell):
        fac *= (1 - kronecker_symbol(t, p) * Fraction(1, p**k)) / (1 - Fraction(1, p ** (2 * k)))
    return incomplete_L_nonpositive(k, t, ell) * fac * S


def cohen_eisenstein_series(k: int, ell: int, N: int, n_max: int) -> QSeries:
    _check_level(ell, N)
    return QSeries(n_max, {n: hurwitz_class_number(k, ell, N, n) for n in range(n_max + 1)})


def level_weight(k: int, ell: int, N: int) -> Fraction:
    """prod_{p | N/ell} (p-1)/(p^{2k}-p) divided by L_ell(1-2k, id)."""
    w = 1 / incomplete_L_nonpositive(2 * k, 1, ell)
    for p in prime_factors(N // ell) if N // ell > 1 else ():
        w *= Fraction(p - 1, p ** (2 * k) - p)
    return w


def theorem_1_1_combination(k: int, N: int, n_max: int) -> QSeries:
    """(2k-1)/3 times the level-weighted sum over ell | N of the Cohen series."""
    _check_level(1, N)
    total = QSeries(n_max)
    for ell in divisors(N):
        total = total + cohen_eisenstein_series(k, ell, N, n_max).scale(level_weight(k, ell, N))
    return total.scale(Fraction(2 * k - 1, 3))


@dataclass(frozen=True)
class SqrtScaled:
    """value * sqrt(radicand), with value an exact PiRational."""

    value: PiRational
    radicand: int

    def __float__(self):
        return float(self.value) * math.sqrt(self.radicand)


def _gamma_zeta_over_pi(k: int) -> Fraction:
    # Gamma(k) zeta(k) / (2^{k-1} pi^k), rational for even k
    z = zeta_even_positive(k)
    return math.factorial(k - 1) * z.coefficient / 2 ** (k - 1)


def theorem_1_2_rhs(k: int, p: int, n_max: int) -> tuple[SqrtScaled, QSeries]:
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    if p < 3 or prime_factors(p) != [p]:
        raise ValueError("p must be an odd prime")
    scalar = (-1) ** (k // 2) * _gamma_zeta_over_pi(k) / dirichlet_L_nonpositive(2 * k, 1)
    pk = Fraction(1, p**k)
    series = cohen_eisenstein_series(k, 1, 1, n_max).scale(pk)
    inner = cohen_eisenstein_series(k, 1, p, n_max).scale(Fraction(p - 1, p ** (2 * k) - p))
    inner = inner + cohen_eisenstein_series(k, p, p, n_max).scale(Fraction(1, 1 - p ** (2 * k - 1)))
    series = series + inner.scale(1 - pk)
    return SqrtScaled(PiRational(scalar, 0), p), series


def holomorphic_eisenstein_coefficients(k: int, N: int, n_max: int) -> QSeries:
    """1 + 2 zeta(2k)/zeta(1-2k) sum_n K_N(0,n;2k) n^{2k-1} q^n, exactly."""
    if N < 1 or not is_squarefree(N):
        raise ValueError("N must be squarefree")
    pre = zeta_even_positive(2 * k) * Fraction(2) / dirichlet_L_nonpositive(2 * k, 1)
    coeffs = {0: Fraction(1)}
    for n in range(1, n_max + 1):
        v = pre * zeta_K_level(N, n, k) * Fraction(n) ** (2 * k - 1)
        assert v.pi_exponent == 0
        coeffs[n] = v.coefficient
    return QSeries(n_max, coeffs)


# ---------------------------------------------------------------- harmonic expansions


@dataclass
class HarmonicExpansion:
    """Fourier data of a harmonic form of weight ``weight``.

    ``c_minus[0]`` multiplies v^(1-weight); ``c_minus[n]`` for n < 0 multiplies
    the incomplete-gamma profile.  Values may be exact or complex.
    """

    weight: Fraction
    c_plus: dict[int, object] = field(default_factory=dict)
    c_minus: dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        self.weight = Fraction(self.weight)
        if any(n > 0 for n in self.c_minus):
            raise ValueError("non-holomorphic indices must be <= 0")


@dataclass(frozen=True)
class XiTerm:
    """coefficient * (4 pi n)^power, with the coefficient already conjugated."""

    coefficient: object
    n: int
    power: Fraction

    def value(self) -> complex:
        c = complex(self.coefficient)
        if self.n == 0:
            return c
        return c * (4 * math.pi * self.n) ** float(self.power)


def _conj(x):
    if isinstance(x, (int, Fraction)):
        return x
    return x.conjugate()


def xi_coefficients(h: HarmonicExpansion) -> dict[int, XiTerm]:
    """Coefficients of the weight 2 - kappa image of h."""
    one_minus = 1 - h.weight
    out = {}
    for n, c in sorted(h.c_minus.items()):
        if not c:
            continue
        if n == 0:
            out[0] = XiTerm(one_minus * _conj(c), 0, Fraction(0))
        else:
            out[-n] = XiTerm(-_conj(c), -n, one_minus)
    return out


def raise_scalar(kappa, j, times: int) -> tuple[Fraction, Fraction]:
    """Apply R_kappa v^j = (j + kappa) v^(j-1) ``times`` times, raising kappa by 2 each step."""
    if times < 1:
        raise ValueError("times must be positive")
    kappa, j = Fraction(kappa), Fraction(j)
    acc = Fraction(1)
    for _ in range(times):
        acc *= j + kappa
        j -= 1
        kappa += 2
    return acc, j


def principal_power(base: complex, exponent: float) -> complex:
    """base**exponent on the principal branch."""
    if base == 0:
        return 0j
    return cmath.exp(exponent * cmath.log(base))


__all__ = [
    "HarmonicExpansion",
    "QSeries",
    "SqrtScaled",
    "XiTerm",
    "cohen_eisenstein_series",
    "holomorphic_eisenstein_coefficients",
    "hurwitz_class_number",
    "level_weight",
    "principal_power",
    "raise_scalar",
    "theorem_1_1_combination",
    "theorem_1_2_rhs",
    "xi_coefficients",
]

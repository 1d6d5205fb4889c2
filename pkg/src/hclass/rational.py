"""Exact rationals, pi-graded rationals, Bernoulli numbers and L-values.

``Rational`` is the standard library :class:`fractions.Fraction`; it is
already kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .arith import is_fundamental, kronecker_symbol, prime_factors

Rational = Fraction


@dataclass(frozen=True)
class PiRational:
    """coefficient * pi**pi_exponent, held exactly."""

    coefficient: Fraction
    pi_exponent: int

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    def __mul__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coefficient * other.coefficient, self.pi_exponent + other.pi_exponent)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coefficient * other, self.pi_exponent)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coefficient / other.coefficient, self.pi_exponent - other.pi_exponent)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coefficient / other, self.pi_exponent)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiRational(Fraction(other) / self.coefficient, -self.pi_exponent)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, PiRational):
            if other.pi_exponent != self.pi_exponent and other.coefficient and self.coefficient:
                raise ValueError("cannot add PiRationals with different pi exponents")
            exp = self.pi_exponent if self.coefficient else other.pi_exponent
            return PiRational(self.coefficient + other.coefficient, exp)
        return NotImplemented

    def __neg__(self):
        return PiRational(-self.coefficient, self.pi_exponent)

    def __sub__(self, other):
        return self + (-other)

    def __float__(self):
        return float(self.coefficient) * math.pi**self.pi_exponent

    def __str__(self):
        return f"({self.coefficient})*pi^{self.pi_exponent}"


@dataclass(frozen=True)
class GaussianRational:
    """re + im*i with exact rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return _as_gauss(o) - self

    def __mul__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, o):
        try:
            o = _as_gauss(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))


def _as_gauss(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x), Fraction(0))
    raise TypeError(f"not exact: {x!r}")


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = -1/2, via sum_{j<=m} C(m+1, j) B_j = 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return Fraction(1)
    if m > 1 and m % 2:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(m):
        acc += comb(m + 1, j) * bernoulli_number(j)
    return -acc / (m + 1)


def bernoulli_polynomial(m: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum((comb(m, j) * bernoulli_number(j) * x ** (m - j) for j in range(m + 1)), Fraction(0))


def _conductor(t: int) -> int:
    return 1 if t == 1 else abs(t)


def _check_char(k: int, t: int) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    if not is_fundamental(t):
        raise ValueError(f"{t} is not a fundamental discriminant")


@lru_cache(maxsize=4096)
def generalized_bernoulli(k: int, t: int) -> Fraction:
    """B_{k, chi_t} = f^{k-1} sum_{a=1}^{f} chi_t(a) B_k(a/f)."""
    _check_char(k, t)
    f = _conductor(t)
    total = Fraction(0)
    for a in range(1, f + 1):
        chi = kronecker_symbol(t, a)
        if chi:
            total += chi * bernoulli_polynomial(k, Fraction(a, f))
    return Fraction(f) ** (k - 1) * total


def dirichlet_L_nonpositive(k: int, t: int) -> Fraction:
    """L(1-k, chi_t) = -B_{k,chi_t}/k."""
    return -generalized_bernoulli(k, t) / k


def incomplete_L_nonpositive(k: int, t: int, M: int) -> Fraction:
    """L_M(1-k, chi_t): the complete value times prod_{p | M} (1 - chi_t(p) p^{k-1})."""
    if M < 1:
        raise ValueError("M must be positive")
    v = dirichlet_L_nonpositive(k, t)
    for p in prime_factors(M) if M > 1 else ():
        v *= 1 - kronecker_symbol(t, p) * Fraction(p) ** (k - 1)
    return v


def zeta_even_positive(k: int) -> PiRational:
    """zeta(k) for even k >= 2 as an exact rational multiple of pi^k."""
    if k < 2 or k % 2:
        raise ValueError("zeta_even_positive needs an even k >= 2")
    coeff = (-1) ** (k // 2 + 1) * bernoulli_number(k) * 2**k / (2 * math.factorial(k))
    return PiRational(coeff, k)


# ---------------------------------------------------------------- numerics

EM_TERMS = 14          # Bernoulli correction terms in Euler-Maclaurin
EM_MIN_CUTOFF = 12     # direct terms summed before the asymptotic tail

_B2J = [float(bernoulli_number(2 * j)) / math.factorial(2 * j) for j in range(EM_TERMS + 1)]


def hurwitz_zeta(s: float, q: float, tol: float = 1e-15) -> float:
    """zeta(s, q) for real s > 1, q > 0 by Euler-Maclaurin summation."""
    if s <= 1:
        raise ValueError("hurwitz_zeta needs s > 1")
    if q <= 0:
        raise ValueError("hurwitz_zeta needs q > 0")
    M = EM_MIN_CUTOFF
    while True:
        head = math.fsum((n + q) ** -s for n in range(M))
        x = M + q
        tail = x ** (1 - s) / (s - 1) + 0.5 * x**-s
        rising = s
        power = x ** (-s - 1)
        last = 0.0
        for j in range(1, EM_TERMS + 1):
            term = _B2J[j] * rising * power
            tail += term
            last = abs(term)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            power /= x * x
        if last <= tol * max(1.0, abs(head)) or M > 4096:
            return head + tail
        M *= 2


def dirichlet_L_numeric(s: float, t: int, tol: float = 1e-13, M: int = 1) -> float:
    """L_M(s, chi_t) for real s > 1 via Hurwitz zeta values."""
    if s <= 1:
        raise ValueError("dirichlet_L_numeric needs s > 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_fundamental(t):
        raise ValueError(f"{t} is not a fundamental discriminant")
    f = _conductor(t)
    inner = tol * 1e-2 / f
    parts = []
    for a in range(1, f + 1):
        chi = kronecker_symbol(t, a)
        if chi:
            parts.append(chi * hurwitz_zeta(s, a / f, inner))
    value = math.fsum(parts) * f ** (-s)
    for p in prime_factors(M) if M > 1 else ():
        value *= 1 - kronecker_symbol(t, p) * p ** (-s)
    return value

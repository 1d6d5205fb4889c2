import math
from fractions import Fraction
from math import comb

import mpmath
import pytest

from hclass.arith import kronecker_symbol
from hclass.rational import (
    GaussianRational,
    PiRational,
    bernoulli_number,
    dirichlet_L_nonpositive,
    dirichlet_L_numeric,
    generalized_bernoulli,
    hurwitz_zeta,
    incomplete_L_nonpositive,
    zeta_even_positive,
)


@pytest.mark.parametrize("m,want", [(0, 1), (1, Fraction(-1, 2)), (4, Fraction(-1, 30)), (12, Fraction(-691, 2730))])
def test_bernoulli_values(m, want):
    assert bernoulli_number(m) == want


def test_bernoulli_recurrence_up_to_60():
    for m in range(1, 61):
        assert sum(comb(m + 1, j) * bernoulli_number(j) for j in range(m + 1)) == 0


def test_odd_bernoulli_vanish():
    assert all(bernoulli_number(m) == 0 for m in range(3, 40, 2))


@pytest.mark.parametrize("k,t,want", [(4, 1, Fraction(-1, 30)), (1, -4, Fraction(-1, 2)), (2, 1, Fraction(1, 6))])
def test_generalized_bernoulli(k, t, want):
    assert generalized_bernoulli(k, t) == want


@pytest.mark.parametrize("k,t,want", [(2, 1, Fraction(-1, 12)), (4, 1, Fraction(1, 120)), (1, -4, Fraction(1, 2))])
def test_L_nonpositive(k, t, want):
    assert dirichlet_L_nonpositive(k, t) == want


def test_zeta_negative_odd_matches_bernoulli():
    for k in range(1, 16):
        assert dirichlet_L_nonpositive(2 * k, 1) == -bernoulli_number(2 * k) / (2 * k)


def test_L_nonpositive_against_mpmath():
    # L(1-k, chi_t) for a few real characters
    for k, t in [(1, -3), (3, -4), (2, 5), (2, 12), (3, -7), (4, 8)]:
        chi = [kronecker_symbol(t, a) for a in range(abs(t))]
        want = mpmath.dirichlet(1 - k, chi)
        assert float(dirichlet_L_nonpositive(k, t)) == pytest.approx(float(want), rel=1e-12, abs=1e-14)


@pytest.mark.parametrize(
    "k,t,M,want", [(2, 1, 1, Fraction(-1, 12)), (2, 1, 2, Fraction(1, 12)), (2, 1, 6, Fraction(-1, 6))]
)
def test_incomplete_L(k, t, M, want):
    assert incomplete_L_nonpositive(k, t, M) == want


@pytest.mark.parametrize("k,c", [(2, Fraction(1, 6)), (4, Fraction(1, 90)), (8, Fraction(1, 9450))])
def test_zeta_even_positive(k, c):
    assert zeta_even_positive(k) == PiRational(c, k)


def test_zeta_even_agrees_with_numeric():
    for k in (2, 4, 6, 8):
        assert float(zeta_even_positive(k)) == pytest.approx(dirichlet_L_numeric(k, 1, 1e-12), rel=1e-10)


@pytest.mark.parametrize(
    "s,t,want",
    [(2, 1, math.pi**2 / 6), (3, 1, 1.2020569031595942), (2, -4, 0.915965594177219), (2.5, 5, None), (3, -3, None)],
)
def test_L_numeric(s, t, want):
    if want is None:
        want = float(mpmath.dirichlet(s, [kronecker_symbol(t, a) for a in range(abs(t))]))
    assert dirichlet_L_numeric(s, t) == pytest.approx(want, rel=1e-12)


def test_hurwitz_zeta_against_mpmath():
    for s in (1.5, 2.0, 3.0, 7.0):
        for q in (0.1, 0.25, 0.5, 1.0, 3.7):
            assert hurwitz_zeta(s, q) == pytest.approx(float(mpmath.zeta(s, q)), rel=1e-13)


def test_incomplete_L_numeric_euler_factors():
    # removing the factors at 2 and 3 from zeta(3)
    want = float(mpmath.zeta(3)) * (1 - 2**-3) * (1 - 3**-3)
    assert dirichlet_L_numeric(3, 1, M=6) == pytest.approx(want, rel=1e-12)


class TestPiRational:
    def test_products_add_exponents(self):
        a = PiRational(Fraction(1, 6), 2)
        b = PiRational(Fraction(3), -4)
        assert a * b == PiRational(Fraction(1, 2), -2)
        assert a / b == PiRational(Fraction(1, 18), 6)

    def test_addition_requires_equal_exponents(self):
        with pytest.raises((ValueError, TypeError)):
            PiRational(Fraction(1), 2) + PiRational(Fraction(1), 3)
        assert PiRational(Fraction(1), 2) + PiRational(Fraction(1, 2), 2) == PiRational(Fraction(3, 2), 2)

    def test_float(self):
        assert float(PiRational(Fraction(1, 90), 4)) == pytest.approx(math.pi**4 / 90, rel=1e-15)

    def test_reduced(self):
        x = PiRational(Fraction(6, 4), 1)
        assert x.coefficient.denominator == 2


class TestGaussianRational:
    def test_arithmetic(self):
        z = GaussianRational(Fraction(1, 2), Fraction(-1, 3))
        w = GaussianRational(Fraction(2), Fraction(1))
        assert complex(z * w) == pytest.approx(complex(z) * complex(w))
        assert complex(z + w) == pytest.approx(complex(z) + complex(w))
        assert z.conjugate() == GaussianRational(Fraction(1, 2), Fraction(1, 3))

import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest

from hclass.arith import divisors, kronecker_symbol
from hclass.kloosterman import (
    gauss_prime_power,
    half_integral_kloosterman,
    kloosterman_zero_factored,
    kohnen_plus_sum,
    local_factor_closed,
    local_factor_direct,
    parity_kappa,
    plus_tail_bound,
    plus_zeta_closed,
    plus_zeta_direct,
    ramanujan_sum,
    unit_kloosterman,
    zeta_K_constants,
    zeta_K_level,
)
from hclass.rational import PiRational

H = Fraction(1, 2)


def brute_half(kappa, m, n, c):
    # textbook definition, independent of the kernels
    total = 0j
    for r in range(c):
        if math.gcd(r, c) != 1:
            continue
        rs = pow(r, -1, c)
        eps = 1 if r % 4 == 1 else 1j
        total += kronecker_symbol(c, r) * eps ** int(2 * kappa) * cmath.exp(2j * math.pi * (m * rs + n * r) / c)
    return total


@pytest.mark.parametrize("kappa,want", [(H, 1 + 1j), (3 * H, 1 - 1j), (5 * H, 1 + 1j)])
def test_half_integral_small(kappa, want):
    assert half_integral_kloosterman(kappa, 0, 0, 4) == pytest.approx(want, abs=1e-12)


def test_half_integral_against_textbook_sum():
    rng = random.Random(11)
    for _ in range(60):
        kappa = Fraction(rng.choice([1, 3, 5, 7]), 2)
        m, n = rng.randint(-9, 9), rng.randint(-9, 9)
        c = 4 * rng.randint(1, 40)
        assert half_integral_kloosterman(kappa, m, n, c) == pytest.approx(brute_half(kappa, m, n, c), abs=1e-9)


def test_weight_periodicity():
    rng = random.Random(5)
    for _ in range(200):
        k2 = rng.choice([1, 3, 5, 7])
        m, n, c = rng.randint(-20, 20), rng.randint(-20, 20), 4 * rng.randint(1, 60)
        a = half_integral_kloosterman(Fraction(k2, 2), m, n, c)
        b = half_integral_kloosterman(Fraction(k2 + 4, 2), m, n, c)
        assert a == b


def test_reflection_small_sample():
    rng = random.Random(2)
    for _ in range(100):
        k2 = rng.choice([1, 3, 5, 7])
        m, n, c = rng.randint(-20, 20), rng.randint(-20, 20), 4 * rng.randint(1, 200)
        a = half_integral_kloosterman(Fraction(k2, 2), m, n, c)
        sign = (-1) ** ((k2 - 1) // 2)
        assert a == pytest.approx(sign * 1j * half_integral_kloosterman(Fraction(4 - k2, 2), -n, -m, c), abs=1e-9)


@pytest.mark.parametrize("m,n,c,want", [(0, 0, 12, 4), (0, 1, 4, 0), (0, 2, 4, -2), (0, 5, 30, 4)])
def test_unit_kloosterman(m, n, c, want):
    assert unit_kloosterman(m, n, c) == pytest.approx(want, abs=1e-12)


def test_ramanujan_sum_matches_unit_sum():
    for c in range(1, 60):
        for n in range(-10, 25):
            assert ramanujan_sum(c, n) == pytest.approx(unit_kloosterman(0, n, c).real if n else unit_kloosterman(0, 0, c), abs=1e-9)


def test_factored_zero_kloosterman_matches_brute():
    rng = random.Random(7)
    for _ in range(150):
        kappa = rng.choice([H, 3 * H])
        n = rng.randint(-60, 60)
        c = 4 * rng.randint(1, 300)
        assert kloosterman_zero_factored(kappa, n, c) == pytest.approx(brute_half(kappa, 0, n, c), abs=1e-8)


def test_gauss_prime_power_brute():
    for p in (3, 5, 7):
        for e in (1, 2, 3):
            q = p**e
            for m in range(-2 * q, 2 * q, max(1, q // 7)):
                want = sum(
                    (kronecker_symbol(r, p) ** e) * cmath.exp(2j * math.pi * m * r / q) for r in range(q) if r % p
                )
                assert gauss_prime_power(p, e, m) == pytest.approx(want, abs=1e-9)


def test_zeta_K_level_examples():
    assert zeta_K_level(1, 1, 2) == PiRational(Fraction(90), -4)
    assert zeta_K_level(1, 2, 2) == PiRational(Fraction(90) * Fraction(9, 8), -4)


def test_zeta_K_level_against_truncated_series():
    # sum over c = 0 mod N of c_c(n) c^{-2k}
    N, n, k = 3, 3, 2
    direct = sum(ramanujan_sum(c, n) / c ** (2 * k) for c in range(N, 200_000, N))
    assert float(zeta_K_level(N, n, k)) == pytest.approx(direct, rel=1e-6)


def test_zeta_K_constants_examples():
    r = float(mpmath.zeta(3) / mpmath.zeta(4))
    assert zeta_K_constants(1, 2, "level-infty") == pytest.approx(r, rel=1e-12)
    assert zeta_K_constants(1, 2, "modified") == pytest.approx(r, rel=1e-12)
    assert zeta_K_constants(3, 2, "modified") == pytest.approx(r * (1 - 3**-3) / (1 - 3**-4), rel=1e-12)
    with pytest.raises(ValueError):
        zeta_K_constants(3, 2, "cusp")


def test_local_factor_direct_examples():
    assert local_factor_direct(H, 2, 2, 0) == pytest.approx(1 + 1j, abs=1e-12)
    assert local_factor_direct(3 * H, 2, 2, 1) == pytest.approx(-1 + 1j, abs=1e-12)
    # eps_3^{-1} * i sqrt(3) = sqrt(3)
    assert local_factor_direct(H, 3, 1, 1) == pytest.approx(math.sqrt(3), abs=1e-12)


def test_local_factor_closed_limits():
    assert local_factor_closed(2, 3, 0) == Fraction(1, 39)
    assert complex(local_factor_closed(2, 2, 0)) == pytest.approx((1 + 1j) / 28)


def test_local_factor_matching_sample():
    for p in (2, 3, 5):
        for k in (2, 3):
            kappa = parity_kappa(k)
            for n in (1, -1, 3, -5, 4, -12, 18, -20, 25, 7):
                v = 0
                while n % p ** (v + 1) == 0:
                    v += 1
                top = v + (4 if p == 2 else 2)
                s = sum(local_factor_direct(kappa, p, j, n) / p ** (j * (k + 0.5)) for j in range(2 if p == 2 else 1, top))
                assert s == pytest.approx(complex(local_factor_closed(k, p, -n)).conjugate(), abs=1e-10)


def test_plus_zeta_direct_empty():
    assert plus_zeta_direct(H, 1, 0, 2, 0).value == 0


def test_plus_zeta_closed_vs_direct():
    for k, N, n in [(2, 1, -5), (2, 3, -4), (3, 1, 4), (3, 3, -3), (2, 1, -12)]:
        sv = plus_zeta_direct(parity_kappa(k), N, n, k, 20_000)
        assert abs(sv.value - plus_zeta_closed(k, N, n)) <= sv.tail_bound


def test_plus_zeta_closed_constant_odd_k():
    # odd k, N = 1: conjugate of the remark value
    for k in (3, 5):
        r = float(mpmath.zeta(2 * k - 1) / mpmath.zeta(2 * k))
        assert plus_zeta_closed(k, 1, 0) == pytest.approx((1 + 1j) / 2 ** (2 * k) * r, rel=1e-12)
    # even k reproduces the remark value itself
    r = float(mpmath.zeta(3) / mpmath.zeta(4))
    assert plus_zeta_closed(2, 1, 0) == pytest.approx((1 - 1j) / 16 * r, rel=1e-12)


def test_plus_zeta_closed_off_support_is_zero():
    assert plus_zeta_closed(2, 1, 2) == 0
    assert plus_zeta_closed(3, 15, 7) == 0


def test_tail_bound_shrinks():
    assert plus_tail_bound(1, 2, 40_000) < plus_tail_bound(1, 2, 20_000)


def sqrt_count_brute(a, D):
    return sum(1 for b in range(2 * a) if (b * b - D) % (4 * a) == 0)


def test_kohnen_plus_sum_small():
    assert kohnen_plus_sum(2, 1, 1) == pytest.approx(1.0, abs=1e-12)
    assert kohnen_plus_sum(2, 5, 1) == pytest.approx(1.0, abs=1e-12)


def test_kohnen_identity_sample():
    for k in (2, 3):
        for D in (1, 5, 8, 12):
            for a in range(1, 40):
                s = sum(math.sqrt(d) * kohnen_plus_sum(k, (-1) ** k * D, d) for d in divisors(a))
                assert s == pytest.approx(sqrt_count_brute(a, D), abs=1e-8)

import math

import mpmath
import numpy as np
import pytest

from hclass.eisenstein import (
    F_plus_coefficient,
    LatticeSumPlan,
    cycle_integral_direct,
    eval_E2k,
    eval_F0,
    incomplete_gamma_upper,
    theta_integral_closed,
    theta_integral_quadrature,
)
from hclass.kloosterman import plus_tail_bound
from hclass.qforms import QuadForm, TruncationConfig, real_trace_unfolded

CATALAN = 0.915965594177219015


def test_F0_identity_coset_only():
    # pairs (0,1), (1,-1), (1,0), (1,1)
    assert eval_F0(1, 2, 1j, TruncationConfig(lattice_bound=1)).value == pytest.approx(2.5, rel=1e-12)
    assert eval_F0(5, 2, 1j, TruncationConfig(lattice_bound=4)).value == pytest.approx(1.0, rel=1e-12)


def test_F0_at_i_closed_form():
    # (1/2) sum' |m i + n|^{-4} / zeta(4) = 30 G / pi^2
    got = eval_F0(1, 2, 1j, TruncationConfig(lattice_bound=3000))
    want = 30 * CATALAN / math.pi**2
    assert got.value == pytest.approx(want, rel=1e-6)
    assert abs(got.value - want) <= got.tail_bound


def test_F0_against_mobius_full_lattice():
    tau = complex(0.23, 0.81)
    k, B = 3, 400
    m = np.arange(-B, B + 1)
    M, Nn = np.meshgrid(m, m)
    mask = (M != 0) | (Nn != 0)
    full = np.sum(tau.imag**k / np.abs(M[mask] * tau + Nn[mask]) ** (2 * k))
    want = 0.5 * full / float(mpmath.zeta(2 * k))
    assert eval_F0(1, k, tau, TruncationConfig(lattice_bound=B)).value == pytest.approx(want, rel=1e-6)


def test_F0_invariance():
    # level 3: tau and gamma tau with gamma in Gamma_0(3)
    cfg = TruncationConfig(lattice_bound=1500)
    tau = complex(0.1, 0.9)
    a, b, c, d = 1, 0, 3, 1
    g = (a * tau + b) / (c * tau + d)
    assert eval_F0(3, 2, g, cfg).value == pytest.approx(eval_F0(3, 2, tau, cfg).value, rel=1e-4)


def test_lattice_plan_pairs():
    pairs = list(LatticeSumPlan(2, 2).pairs())
    assert pairs[0] == (0, 1)
    assert all(c % 2 == 0 and math.gcd(c, d) == 1 for c, d in pairs[1:])


def test_E2k_limits():
    val, tail = eval_E2k(1, 2, 50j)
    assert val == pytest.approx(1)
    v40, _ = eval_E2k(1, 2, 1j, 40)
    v80, _ = eval_E2k(1, 2, 1j, 80)
    assert v40 == pytest.approx(v80, abs=1e-12)
    # E4(i) = 3 Gamma(1/4)^8 / (2 pi)^6
    assert v80.real == pytest.approx(3 * math.gamma(0.25) ** 8 / (2 * math.pi) ** 6, rel=1e-12)


@pytest.mark.parametrize("k,want", [(2, 8 / 3), (3, -32 / 15)])
def test_theta_examples(k, want):
    assert theta_integral_quadrature(k) == pytest.approx(want, abs=1e-10)


def test_theta_all():
    for k in range(1, 11):
        q = theta_integral_quadrature(k)
        assert abs(q.imag) < 1e-10
        assert q.real == pytest.approx(theta_integral_closed(k), abs=1e-10)


def test_incomplete_gamma():
    for x in (0.01, 0.3, 1.0, 2.5, 10.0, 50.0):
        assert incomplete_gamma_upper(1, x) == pytest.approx(math.exp(-x), rel=1e-13)
        assert incomplete_gamma_upper(0.5, x) == pytest.approx(math.sqrt(math.pi) * math.erfc(math.sqrt(x)), rel=1e-12)
    for s in (-3.5, -2.0, -0.5, 0.0, 0.5, 1.5, 2.5, 4.0):
        for x in (0.05, 0.7, 1.3, 6.0, 30.0):
            assert incomplete_gamma_upper(s, x) == pytest.approx(float(mpmath.gammainc(s, x)), rel=1e-12)
    r = incomplete_gamma_upper(1.5, 50) / (50**0.5 * math.exp(-50))
    assert abs(r - 1) < 0.02


def test_F_plus_forbidden_residue():
    assert F_plus_coefficient(2, 1, 2) == 0
    assert F_plus_coefficient(3, 1, 3) == 0


def test_F_plus_constant_odd_k():
    k = 3
    r = float(mpmath.zeta(2 * k - 1) / mpmath.zeta(2 * k))
    # closed value at odd k is the conjugate of (1 - i)/2^{2k} zeta(2k-1)/zeta(2k)
    pre = (2 / 3) * complex(mpmath.power(0.5j, k - 1.5)) * math.pi
    assert F_plus_coefficient(k, 1, 0) == pytest.approx(pre * (1 + 1j) / 2 ** (2 * k) * r, rel=1e-12)


def test_F_plus_closed_vs_direct():
    c_max = 20_000
    for k in (2, 3):
        for N in (1, 3):
            bound = plus_tail_bound(N, k, c_max) * (2 / 3) * math.pi * abs((0.5j) ** (k - 1.5))
            for n in range(-30, 31, 7 if k == 2 else 5):
                a = F_plus_coefficient(k, N, n, "closed")
                b = F_plus_coefficient(k, N, n, "direct", c_max)
                scale = 1 / math.gamma(k - 0.5) if n < 0 else 1
                assert abs(a - b) <= bound * scale


@pytest.mark.parametrize("D,Q", [(5, QuadForm(1, 1, -1)), (8, QuadForm(1, 2, -1)), (13, QuadForm(1, 3, -1))])
def test_cycle_integral_equals_unfolded_trace(D, Q):
    k = 2
    direct = cycle_integral_direct(k, 1, Q)
    unfolded = real_trace_unfolded(k, 1, D, TruncationConfig(a_max=50_000)).value
    assert direct.real == pytest.approx(unfolded, rel=1e-4)
    assert cycle_integral_direct(k, 1, Q, shift=0.4) == pytest.approx(direct, rel=1e-9)

import random

import pytest
from mpmath import mp

from quadgauss.catalog import closed_form
from quadgauss.engine import (ExtendedGaussParams, ParityError, QuadExpSum,
                              classical_gauss_quad, gauss_fast, gauss_naive,
                              ls_transform, quad_exp_naive)
from quadgauss.exact import cf_to_complex, hpc_mul
from quadgauss.sums import RangeTooLargeError


def _gap(a, b):
    with mp.workprec(200):
        return float(mp.hypot(a.re - b.re, a.im - b.im))


# ---------------------------------------------------------------------------
# naive evaluator


def test_gauss_naive_four_term_hand_sum():
    # i + 1 + i + 1 = 2 + 2i, matching the classical closed form at k = 4
    g = gauss_naive(ExtendedGaussParams(1, 4), 128)
    with mp.workprec(160):
        assert abs(g.re - 2) <= g.err and abs(g.im - 2) <= g.err
    rhs = cf_to_complex(closed_form("F1", k=4).closed, 128)
    assert _gap(g, rhs) <= g.err + rhs.err


def test_gauss_naive_single_term():
    g = gauss_naive(ExtendedGaussParams(1, 1), 128)
    with mp.workprec(160):
        assert abs(g.re - 1) <= g.err and abs(g.im) <= g.err


def test_gauss_naive_k5_is_sqrt5():
    g = gauss_naive(ExtendedGaussParams(1, 5), 128)
    with mp.workprec(160):
        assert abs(g.re - mp.sqrt(5)) <= g.err and abs(g.im) <= g.err


def test_gauss_naive_range_cap():
    with pytest.raises(RangeTooLargeError):
        gauss_naive(ExtendedGaussParams(1, 10 ** 6, p=200), 64)


def test_gauss_naive_periodicity_in_p():
    # the n -> n + k shift leaves each term invariant, so G_p = p * G_1
    for j, k in [(1, 5), (2, 7), (1, 8), (3, 4)]:
        g1 = gauss_naive(ExtendedGaussParams(j, k, 1), 128)
        for p in range(2, 6):
            gp = gauss_naive(ExtendedGaussParams(j, k, p), 128)
            with mp.workprec(160):
                gap = float(mp.hypot(gp.re - p * g1.re, gp.im - p * g1.im))
            assert gap <= gp.err + p * g1.err


# ---------------------------------------------------------------------------
# reciprocity transform


def test_ls_transform_j1_k2():
    factor, transformed = ls_transform(QuadExpSum(1, 2, 0))
    assert (transformed.j, transformed.k, transformed.m) == (2, 1, 0)
    f = cf_to_complex(factor, 128)
    base = quad_exp_naive(transformed, 128).conjugate()
    total = hpc_mul(f, base, 128)
    with mp.workprec(160):
        assert abs(total.re - 1) <= total.err and abs(total.im - 1) <= total.err


def test_ls_transform_reproduces_odd_k_closed_form():
    # j=1, k=5, m=-1: the length-5 sum equals (1/2)(1+i)e^(-i pi/20) sqrt(10)
    factor, transformed = ls_transform(QuadExpSum(1, 5, -1))
    f = cf_to_complex(factor, 128)
    base = quad_exp_naive(transformed, 128).conjugate()
    total = hpc_mul(f, base, 128)
    rhs = cf_to_complex(closed_form("F8", k=5).closed, 128)
    assert _gap(total, rhs) <= total.err + rhs.err + 1e-35


def test_ls_transform_parity_violation():
    with pytest.raises(ParityError):
        ls_transform(QuadExpSum(1, 2, 1))


def test_ls_transform_exactness_randomized():
    rng = random.Random(3)
    for _ in range(40):
        j, k = rng.randint(1, 9), rng.randint(1, 60)
        m = rng.randint(-9, 9)
        if (j * k + m) % 2:
            m += 1
        q = QuadExpSum(j, k, m)
        factor, transformed = ls_transform(q)
        lhs = quad_exp_naive(q, 128)
        rhs = hpc_mul(cf_to_complex(factor, 128),
                      quad_exp_naive(transformed, 128).conjugate(), 128)
        assert _gap(lhs, rhs) <= lhs.err + rhs.err + 1e-30


# ---------------------------------------------------------------------------
# fast evaluator


def test_gauss_fast_trivial_cases():
    h = gauss_fast(QuadExpSum(1, 1, 0), 128)
    with mp.workprec(160):
        assert abs(h.re - 1) <= h.err and abs(h.im) <= h.err


def test_gauss_fast_matches_transform_example():
    h = gauss_fast(QuadExpSum(1, 5, -1), 128)
    rhs = cf_to_complex(closed_form("F8", k=5).closed, 128)
    assert _gap(h, rhs) <= h.err + rhs.err + 1e-35


def test_gauss_fast_parity_dead_end():
    with pytest.raises(ParityError):
        gauss_fast(QuadExpSum(1, 101, 0), 128)


def test_gauss_fast_geometric_branches():
    # a reduces to 0 modulo c: pure geometric sums, all parities
    for q in (QuadExpSum(22, 11, 1), QuadExpSum(10, 5, 0),
              QuadExpSum(14, 7, 2), QuadExpSum(24, 12, 0)):
        f, n = gauss_fast(q, 128), quad_exp_naive(q, 128)
        assert _gap(f, n) <= f.err + n.err + 1e-30


def test_gauss_fast_agrees_with_naive_randomized():
    rng = random.Random(19)
    for _ in range(80):
        j, k = rng.randint(1, 25), rng.randint(1, 1500)
        m = rng.randint(-20, 20)
        if (j * k + m) % 2:
            m += 1
        q = QuadExpSum(j, k, m)
        f, n = gauss_fast(q, 128), quad_exp_naive(q, 128)
        assert _gap(f, n) < 1e-25, (j, k, m)


def test_gauss_fast_classical_family_always_transformable():
    for k in range(1, 60):
        q = classical_gauss_quad(1, k)
        f, n = gauss_fast(q, 128), quad_exp_naive(q, 128)
        assert _gap(f, n) < 1e-25


def test_magnitude_law_classification():
    # |G_1(1;k;0)|: sqrt(k) for odd k, sqrt(2k) for k = 0 mod 4, 0 otherwise
    for k in range(1, 60):
        g = gauss_naive(ExtendedGaussParams(1, k), 128)
        with mp.workprec(200):
            mag = mp.hypot(g.re, g.im)
            if k % 2 == 1:
                assert abs(mag - mp.sqrt(k)) < 1e-30
            elif k % 4 == 0:
                assert abs(mag - mp.sqrt(2 * k)) < 1e-30
            else:
                assert mag < 1e-30

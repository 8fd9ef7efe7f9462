import math

import pytest
from mpmath import mp

from quadgauss.catalog import Status
from quadgauss.integrals import (INTEGRAL_IDS, IntegralSpec,
                                 PreconditionError, check_integral, decay_rate,
                                 eval_integral, rhs_sum)


def test_integral_spec_validation():
    with pytest.raises(ValueError):
        IntegralSpec("bogus", 1.0, 1)
    with pytest.raises(ValueError):
        IntegralSpec("A1R1", -1.0, 1)


def test_rhs_sum_known_values():
    # k = 1 leaves only the boundary term sin(a)/2
    h = rhs_sum(IntegralSpec("A1R1", 1.0, 1))
    with mp.workprec(120):
        assert abs(h.re - mp.sin(1) / 2) <= h.err + 1e-25
    # k = 2, a = 1: sin(3/4)/2 - sin(1)/4
    h = rhs_sum(IntegralSpec("A1R1", 1.0, 2))
    with mp.workprec(120):
        want = mp.sin(mp.mpf(3) / 4) / 2 - mp.sin(1) / 4
        assert abs(h.re - want) <= h.err + 1e-25


def test_rhs_sum_xy6b_k1():
    # (XY6B, k=1, a=1) -> e^(i/4)/2
    h = rhs_sum(IntegralSpec("XY6B", 1.0, 1))
    with mp.workprec(120):
        want = mp.expj(mp.mpf(1) / 4) / 2
        assert abs(h.re - want.real) <= h.err + 1e-25
        assert abs(h.im - want.imag) <= h.err + 1e-25


def test_rhs_sum_c10b_two_term_instantiation():
    # (C10b, k=1, a=1): (i/4)(-1) e^(i/4) (1 - e^(-i/4))
    h = rhs_sum(IntegralSpec("C10b", 1.0, 1))
    with mp.workprec(120):
        want = -mp.mpc(0, 1) / 4 * mp.expj(mp.mpf(1) / 4) * (1 - mp.expj(mp.mpf(-1) / 4))
        assert abs(h.re - want.real) <= h.err + 1e-25
        assert abs(h.im - want.imag) <= h.err + 1e-25


def test_rhs_sum_c7a2_single_term_at_b0():
    # (C7A2, k=1, b=0, a=pi): +(1/4) e^(i a/4); the a = (2k-1)pi limit point
    # is where the finite-sum derivations pick up their inputs.  a enters as
    # the caller's float, so the expected value uses the same float.
    h = rhs_sum(IntegralSpec("C7A2", math.pi, 1, b=0.0))
    with mp.workprec(120):
        want = mp.expj(mp.mpf(math.pi) / 4) / 4
        assert abs(h.re - want.real) <= h.err + 1e-25
        assert abs(h.im - want.imag) <= h.err + 1e-25


def test_eval_integral_a1r1_k1_is_half_sin1():
    res = eval_integral(IntegralSpec("A1R1", 1.0, 1), 1e-10)
    with mp.workprec(120):
        assert abs(res.value.re - mp.sin(1) / 2) <= res.est_error + 1e-14
    assert res.evaluations > 0
    assert res.est_error <= 1e-10


def test_eval_integral_xy6b_k1():
    res = eval_integral(IntegralSpec("XY6B", 1.0, 1), 1e-10)
    with mp.workprec(120):
        want = mp.expj(mp.mpf(1) / 4) / 2
        assert abs(res.value.re - want.real) <= res.est_error + 1e-13
        assert abs(res.value.im - want.imag) <= res.est_error + 1e-13


def test_check_integral_a1r1_grid():
    for k in range(1, 5):
        rec = check_integral(IntegralSpec("A1R1", 0.5, k), 1e-8)
        assert rec.status is Status.PASS
        assert rec.gap <= 1e-8


def test_check_integral_a1r1_k2_frozen_value():
    # sin(3/4)/2 - sin(1)/4 = 0.1304516338... (quadrature agrees)
    rec = check_integral(IntegralSpec("A1R1", 1.0, 2), 1e-8)
    assert rec.status is Status.PASS
    assert abs(float(rec.lhs_value.re) - 0.1304516338) < 1e-9


def test_check_integral_x6a_s0_reduces_to_xy6b_family():
    spec = IntegralSpec("X6A", (2 * 2 - 1) * math.pi / 8, 2, s=0.0)
    rec = check_integral(spec, 1e-8)
    assert rec.status is Status.PASS


def test_preconditions():
    with pytest.raises(PreconditionError):
        eval_integral(IntegralSpec("A1R1", 10.0, 1), 1e-8)   # 2a >= k pi
    with pytest.raises(PreconditionError):
        eval_integral(IntegralSpec("X6A", 3.0, 1, s=0.0), 1e-8)  # 4a > pi
    with pytest.raises(PreconditionError):
        eval_integral(IntegralSpec("X6A", 0.3, 2, s=5.0), 1e-8)  # s cap
    assert decay_rate(IntegralSpec("C10b", 1.0, 1)) == pytest.approx(
        2 * math.pi - 1)


def test_tol_floor():
    with pytest.raises(ValueError):
        eval_integral(IntegralSpec("A1R1", 0.5, 2), 1e-13)


def test_halving_tol_shrinks_reported_error():
    spec = IntegralSpec("XY6B", 1.0, 2)
    tols = [1e-6, 5e-7, 2.5e-7]
    errs = [eval_integral(spec, t).est_error for t in tols]
    for a, b in zip(errs, errs[1:]):
        assert b <= a * 0.55
    recs = [check_integral(spec, t) for t in tols]
    for a, b in zip(recs, recs[1:]):
        assert b.gap <= a.gap * 1.0 + 1e-12


def test_c7a2_b_to_zero_continuity():
    base = rhs_sum(IntegralSpec("C7A2", 2.0, 2, b=0.0))
    near = rhs_sum(IntegralSpec("C7A2", 2.0, 2, b=1e-3))
    nearer = rhs_sum(IntegralSpec("C7A2", 2.0, 2, b=1e-6))
    with mp.workprec(120):
        assert float(mp.hypot(near.re - base.re, near.im - base.im)) < 1e-4
        assert float(mp.hypot(nearer.re - base.re, nearer.im - base.im)) < 1e-10


def test_all_ids_have_positive_decay_inside_preconditions():
    cases = {
        "X6A": IntegralSpec("X6A", 0.5, 2, s=1.0),
        "A1R1": IntegralSpec("A1R1", 0.5, 1),
        "XY6B": IntegralSpec("XY6B", 1.0, 1),
        "C10b": IntegralSpec("C10b", 1.0, 1),
        "C7A2": IntegralSpec("C7A2", 1.0, 1),
    }
    assert set(cases) == set(INTEGRAL_IDS)
    for spec in cases.values():
        assert decay_rate(spec) > 0

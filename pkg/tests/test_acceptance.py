"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to watch the lines appear;
the whole suite is single-threaded.
"""

import math
import random
import time
from fractions import Fraction

import pytest
from mpmath import mp

from quadgauss.catalog import Status, get_entry, verify
from quadgauss.engine import (ExtendedGaussParams, ParityError, QuadExpSum,
                              gauss_fast, gauss_naive, ls_transform,
                              quad_exp_naive)
from quadgauss.harness import resolve_ids
from quadgauss.integrals import IntegralSpec, check_integral
from quadgauss.sums import (Kind, cyclotomic_sum, period_reduce, spec)

PREC = 128
TOL = 1e-30


def _report(number: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {number} ({name}): {status}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def _entry_points(ident: str, k_hi: int, p_hi: int):
    entry = get_entry(ident)
    for k in range(1, k_hi + 1):
        if entry.param_names == ("k",):
            if entry.validity(k=k):
                yield {"k": k}
        else:
            for p in range(1, p_hi + 1):
                if entry.validity(k=k, p=p):
                    yield {"k": k, "p": p}


def test_criterion_1_catalog_soundness():
    # every A-E entry, k in [1,40], p in [1,4], 128 bits, gap within
    # 1e-30 + tracked error, single-threaded under 5 minutes
    start = time.perf_counter()
    ids = resolve_ids(["A", "B", "C", "D", "E"])
    checked = 0
    failures = []
    for ident in ids:
        for params in _entry_points(ident, 40, 4):
            rec = verify(ident, params, precision_bits=PREC, tolerance=TOL,
                         allow_exact=False)
            checked += 1
            budget = rec.lhs_value.err + rec.rhs_value.err + TOL
            if not rec.passed() or rec.gap > budget:
                failures.append((ident, params, rec.gap))
    elapsed = time.perf_counter() - start
    _report(1, "catalog soundness A-E",
            not failures and elapsed < 300.0,
            f"{checked} points, {elapsed:.1f}s, failures={failures[:3]}")


def test_criterion_2_root_of_unity_closed_forms():
    failures = []
    checked = 0
    for ident in ("F1", "F2", "F3", "F4", "F6", "F7", "F10", "F11"):
        entry = get_entry(ident)
        for k in range(1, 31):
            if entry.param_names == ("k",):
                points = [{"k": k}]
            elif entry.param_names == ("k", "m"):
                points = [{"k": k, "m": m} for m in range(-3, 4)]
            else:
                points = [{"k": k, "p": p} for p in range(1, 4)]
            for params in points:
                rec = verify(ident, params, precision_bits=PREC, tolerance=TOL)
                checked += 1
                if not rec.passed():
                    failures.append((ident, params, rec.gap))
    # the trailing-residual structure of the universal form is exercised
    residual_seen = 0
    for k, p in [(1, 1), (2, 2), (3, 1), (3, 2), (4, 3), (5, 3), (6, 2)]:
        rhs = get_entry("F7").rhs(k=k, p=p)
        assert rhs.residual is not None
        residual_seen += 1
        rec = verify("F7", {"k": k, "p": p}, precision_bits=PREC, tolerance=TOL)
        if not (rec.passed() and rec.gap <= rec.lhs_value.err
                + rec.rhs_value.err + TOL):
            failures.append(("F7-residual", (k, p), rec.gap))
    _report(2, "extended closed forms F1-F4,F6,F7,F10,F11",
            not failures and residual_seen == 7,
            f"{checked} points, failures={failures[:3]}")


def test_criterion_3_conditional_validity_negatives():
    false_passes = []
    for k in range(2, 21, 2):
        rec = verify("F5", k=k, force=True, precision_bits=PREC)
        if rec.status is not Status.FAIL or rec.gap <= 1e-3:
            false_passes.append(("F5", k, rec.status, rec.gap))
        rec = verify("F8", k=k, force=True, precision_bits=PREC)
        if rec.status is not Status.FAIL or rec.gap <= 1e-3:
            false_passes.append(("F8", k, rec.status, rec.gap))
    errored = 0
    for j, k, m in [(1, 2, 1), (1, 4, 3), (2, 3, 1), (3, 5, 2), (1, 10, 5),
                    (2, 7, 3), (5, 3, 4), (4, 9, 1), (3, 8, 1), (1, 6, 1)]:
        assert (j * k + m) % 2 == 1
        if verify("F9", j=j, k=k, m=m).status is Status.OUT_OF_DOMAIN:
            errored += 1
        with pytest.raises(ParityError):
            ls_transform(QuadExpSum(j, k, m))
    _report(3, "conditional-validity negatives",
            not false_passes and errored == 10,
            f"false_passes={false_passes[:3]}")


def test_criterion_4_exact_zero_identities():
    missing = []
    zero_entries = ["A12", "A13", "A16", "B3", "B4"]
    for ident in zero_entries:
        for k in range(1, 26):
            rec = verify(ident, k=k, precision_bits=PREC)
            if rec.status is not Status.EXACT_PASS:
                missing.append((ident, k, rec.status))
    for ident in ("D4", "D7"):
        for k in range(1, 26):
            for p in (1, 2, 3):
                rec = verify(ident, k=k, p=p, precision_bits=PREC)
                if rec.status is not Status.EXACT_PASS:
                    missing.append((ident, (k, p), rec.status))
    for k in range(1, 26, 2):
        rec = verify("C2_odd", k=k, precision_bits=PREC)
        if rec.status is not Status.EXACT_PASS:
            missing.append(("C2_odd", k, rec.status))
    _report(4, "certified exact zeros / constants",
            not missing, f"missing={missing[:3]}")


def test_criterion_5_reciprocity_engine():
    rng = random.Random(421)
    worst = 0.0
    for _ in range(200):
        j = rng.randint(1, 40)
        k = rng.randint(1, 10 ** 4)
        m = rng.randint(-50, 50)
        if (j * k + m) % 2:
            m += 1
        q = QuadExpSum(j, k, m)
        f = gauss_fast(q, PREC)
        n = quad_exp_naive(q, PREC)
        with mp.workprec(200):
            worst = max(worst, float(mp.hypot(f.re - n.re, f.im - n.im)))
    agreement_ok = worst < 1e-25

    # one-off million-term run: exact agreement and the speedup measurement
    q6 = QuadExpSum(1, 10 ** 6 + 3, -1)
    t0 = time.perf_counter()
    n6 = quad_exp_naive(q6, PREC)
    naive_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    f6 = gauss_fast(q6, PREC)
    fast_s = time.perf_counter() - t0
    with mp.workprec(200):
        big_gap = float(mp.hypot(f6.re - n6.re, f6.im - n6.im))
    agreement_ok = agreement_ok and big_gap < 1e-25
    speedup = naive_s / fast_s if fast_s > 0 else float("inf")

    big = QuadExpSum(1, 10 ** 9 + 7, 1)
    times = []
    for _ in range(3):
        t0 = time.perf_counter()
        gauss_fast(big, PREC)
        times.append(time.perf_counter() - t0)
    big_ms = 1000.0 * sorted(times)[1]

    _report(5, "reciprocity engine",
            agreement_ok and speedup >= 100.0 and big_ms < 50.0,
            f"worst={worst:.2e}, speedup={speedup:.0f}x, 1e9 in {big_ms:.2f}ms")


def test_criterion_6_period_reduction():
    rng = random.Random(97)
    bad = 0
    for _ in range(500):
        lo = rng.randint(-30, 30)
        s = spec(rng.choice([Kind.SIN, Kind.COS, Kind.CEXP]),
                 lo, lo + rng.randint(0, 200),
                 rng.choice([-7, -5, -3, -2, -1, 1, 2, 3, 5, 8]),
                 delta=rng.randint(1, 10),
                 alternating=rng.random() < 0.5)
        red = period_reduce(s)
        total = cyclotomic_sum(red.base).scaled(Fraction(red.multiplier))
        if red.residual is not None:
            total = total + cyclotomic_sum(red.residual)
        if not total.coeff_equal(cyclotomic_sum(s)):
            bad += 1
    template_ok = True
    for k in range(1, 11):
        s = spec(Kind.SIN, 1, 8 * k - 2, 1, delta=4 * k - 1, alternating=True)
        red = period_reduce(s)
        if not (red.multiplier == 2 and red.residual is None
                and (red.base.lower, red.base.upper) == (1, 4 * k - 1)):
            template_ok = False
    _report(6, "period-reduction rewriting",
            bad == 0 and template_ok, f"bad={bad} of 500")


def test_criterion_7_integral_identities():
    grid = {
        "A1R1": [(1.0, 1), (1.0, 2), (0.5, 3), (2.0, 4), (0.25, 5)],
        "XY6B": [(1.0, 1), (2.0, 2), (3.0, 3), (0.5, 4), (4.0, 5)],
        "C10b": [(1.0, 1), (3.0, 2), (2.0, 3), (5.0, 4), (0.5, 5)],
    }
    failures = []
    slow = []
    for ident, points in grid.items():
        for a, k in points:
            t0 = time.perf_counter()
            rec = check_integral(IntegralSpec(ident, a, k), 1e-8)
            dt = time.perf_counter() - t0
            if rec.status is not Status.PASS or rec.gap > 1e-8:
                failures.append((ident, a, k, rec.gap))
            if dt >= 10.0:
                slow.append((ident, a, k, dt))
    for a, k, b in [(2.0, 1, 0.0), (2.0, 2, 0.5), (4.0, 3, 0.25),
                    (1.5, 1, 1.0), (3.0, 4, 0.1)]:
        t0 = time.perf_counter()
        rec = check_integral(IntegralSpec("C7A2", a, k, b=b), 1e-8)
        dt = time.perf_counter() - t0
        if rec.status is not Status.PASS or rec.gap > 1e-8:
            failures.append(("C7A2", a, k, rec.gap))
        if dt >= 10.0:
            slow.append(("C7A2", a, k, dt))
    for a, k in [(math.pi / 8, 1), (1.0, 2), ((2 * 2 - 1) * math.pi / 8, 2),
                 (2.0, 3), (3.0, 4)]:
        t0 = time.perf_counter()
        rec = check_integral(IntegralSpec("X6A", a, k, s=0.0), 1e-8)
        dt = time.perf_counter() - t0
        if rec.status is not Status.PASS or rec.gap > 1e-8:
            failures.append(("X6A", a, k, rec.gap))
        if dt >= 10.0:
            slow.append(("X6A", a, k, dt))
    _report(7, "integral identities",
            not failures and not slow,
            f"failures={failures[:3]}, slow={slow[:2]}")


def test_criterion_8_magnitude_law():
    mismatched = []
    for k in range(1, 201):
        g = gauss_naive(ExtendedGaussParams(1, k), PREC)
        with mp.workprec(200):
            mag = mp.hypot(g.re, g.im)
            if k % 2 == 1:
                ok = abs(mag - mp.sqrt(k)) < 1e-25
            elif k % 4 == 0:
                ok = abs(mag - mp.sqrt(2 * k)) < 1e-25
            else:
                ok = mag < 1e-25
        if not ok:
            mismatched.append(k)
    _report(8, "classical magnitude law k in [1,200]",
            not mismatched, f"mismatched={mismatched[:5]}")

"""Batch verification grids, reports and fast-vs-naive benchmarks."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .catalog import Status, catalog_entries, get_entry, verify
from .engine import QuadExpSum, gauss_fast, quad_exp_naive

ENV_WORKERS = "QUADGAUSS_WORKERS"

#: ids whose out-of-validity points are probed as expected failures
NEGATIVE_SUITE = ("F5", "F8", "F9")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(ENV_WORKERS, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class GridConfig:
    ids: tuple[str, ...]            # entry ids, group letters, or ("all",)
    k_range: tuple[int, int] = (1, 10)
    p_range: tuple[int, int] = (1, 3)
    j_range: tuple[int, int] = (1, 3)
    m_range: tuple[int, int] = (-2, 2)
    precision_bits: int = 128
    tolerance: float = 1e-30
    workers: int = 1
    allow_exact: bool = True
    force_invalid: bool = False     # probe out-of-validity points (negatives)
    expect_fail_ids: tuple[str, ...] = ()
    out_path: Optional[str] = None
    out_format: str = "jsonl"

    def __post_init__(self) -> None:
        if not self.ids:
            raise ValueError("id list must not be empty unless 'all'")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        for name, (lo, hi) in (("k", self.k_range), ("p", self.p_range),
                               ("j", self.j_range), ("m", self.m_range)):
            if hi < lo:
                raise ValueError(f"empty {name} range")


@dataclass
class Report:
    records: list = field(default_factory=list)   # plain dicts, sorted
    summary: dict = field(default_factory=dict)
    total_time: float = 0.0

    def to_jsonl(self) -> str:
        out = io.StringIO()
        for rec in self.records:
            out.write(json.dumps(rec, sort_keys=True))
            out.write("\n")
        out.write(json.dumps({"summary": self.summary}, sort_keys=True))
        out.write("\n")
        return out.getvalue()

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["id", "params", "status", "gap", "lhs_re", "lhs_im",
                         "rhs_re", "rhs_im", "expected_negative"])
        for rec in self.records:
            writer.writerow([
                rec["id"], json.dumps(rec["params"], sort_keys=True),
                rec["status"], rec["gap"], rec["lhs"][0], rec["lhs"][1],
                rec["rhs"][0], rec["rhs"][1], rec.get("expected_negative", False),
            ])
        return out.getvalue()


def resolve_ids(ids: Sequence[str]) -> list[str]:
    """Expand 'all' and single group letters into concrete entry ids."""
    known = [e.id for e in catalog_entries()]
    groups = {e.id: e.group for e in catalog_entries()}
    out: list[str] = []
    for token in ids:
        if token == "all":
            out.extend(known)
        elif len(token) == 1 and token.upper() in "ABCDEF":
            out.extend(i for i in known if groups[i] == token.upper())
        else:
            out.append(get_entry(token).id)
    seen = set()
    ordered = []
    for i in out:
        if i not in seen:
            seen.add(i)
            ordered.append(i)
    return ordered


def grid_points(cfg: GridConfig) -> list[tuple[str, dict]]:
    points: list[tuple[str, dict]] = []
    for ident in resolve_ids(cfg.ids):
        entry = get_entry(ident)
        names = entry.param_names
        k_values = range(cfg.k_range[0], cfg.k_range[1] + 1)
        p_values = range(cfg.p_range[0], cfg.p_range[1] + 1)
        j_values = range(cfg.j_range[0], cfg.j_range[1] + 1)
        m_values = range(cfg.m_range[0], cfg.m_range[1] + 1)
        if names == ("k",):
            combos = [{"k": k} for k in k_values]
        elif names == ("k", "p"):
            combos = [{"k": k, "p": p} for k in k_values for p in p_values]
        elif names == ("k", "m"):
            combos = [{"k": k, "m": m} for k in k_values for m in m_values]
        elif names == ("j", "k", "m"):
            combos = [{"j": j, "k": k, "m": m}
                      for j in j_values for k in k_values for m in m_values]
        else:
            raise ValueError(f"unsupported parameter tuple {names}")
        for params in combos:
            valid = entry.validity(**params)
            if valid or cfg.force_invalid:
                points.append((ident, params))
    return points


def _sort_key(rec: dict):
    return (rec["id"], json.dumps(rec["params"], sort_keys=True))


def _run_point(args) -> dict:
    ident, params, precision_bits, tolerance, force, allow_exact, expect_fail = args
    rec = verify(ident, params, precision_bits=precision_bits,
                 tolerance=tolerance, force=force, allow_exact=allow_exact)
    d = rec.to_dict()
    d["expected_negative"] = bool(expect_fail and rec.status is Status.FAIL)
    return d


def run_grid(cfg: GridConfig) -> Report:
    """Verify the whole Cartesian grid; deterministic output ordering.

    Records are sorted by (id, params) after collection, so the report body
    is byte-identical for a given configuration regardless of worker count.
    Timing appears only in the in-memory summary, never in the record body.
    """
    start = time.perf_counter()
    points = grid_points(cfg)
    jobs = [
        (ident, params, cfg.precision_bits, cfg.tolerance,
         cfg.force_invalid and ident in cfg.expect_fail_ids,
         cfg.allow_exact, ident in cfg.expect_fail_ids)
        for ident, params in points
    ]
    workers = cfg.workers or default_workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_point, jobs, chunksize=8))
    else:
        records = [_run_point(job) for job in jobs]
    records.sort(key=_sort_key)
    counts = {s.value: 0 for s in Status}
    expected_negatives = 0
    max_gap = 0.0
    for rec in records:
        counts[rec["status"]] += 1
        if rec["expected_negative"]:
            expected_negatives += 1
        try:
            gap = float(rec["gap"])
        except ValueError:
            gap = 0.0
        if gap == gap:  # skip NaN from OUT_OF_DOMAIN
            max_gap = max(max_gap, gap)
    unexpected_fail = counts[Status.FAIL.value] - expected_negatives
    report = Report(records=records, total_time=time.perf_counter() - start)
    report.summary = {
        "points": len(records),
        "counts": counts,
        "expected_negatives": expected_negatives,
        "unexpected_fail": unexpected_fail,
        "max_gap": f"{max_gap:.6e}",
    }
    if cfg.out_path:
        write_report(report, cfg.out_path, cfg.out_format)
    return report


def write_report(report: Report, path: str, fmt: str = "jsonl") -> None:
    data = report.to_csv() if fmt == "csv" else report.to_jsonl()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(data)


# ---------------------------------------------------------------------------
# benchmarks

NAIVE_BENCH_CAP = 2 * 10 ** 6


@dataclass(frozen=True)
class BenchRow:
    j: int
    k: int
    fast_ms: float
    naive_ms: Optional[float]
    speedup: Optional[float]


def bench(j: int, k_values: Sequence[int], reps: int = 3,
          precision_bits: int = 128) -> list[BenchRow]:
    """Median wall times of the reciprocity evaluator vs direct summation.

    Sums longer than the bench cap skip the naive column.  The classical
    family S(2j, k, 0) is used so every k is transformable.
    """
    rows = []
    for k in k_values:
        q = QuadExpSum(2 * j, k, 0)
        fast_times = []
        for _ in range(max(1, reps)):
            t0 = time.perf_counter()
            gauss_fast(q, precision_bits)
            fast_times.append(time.perf_counter() - t0)
        fast_ms = 1000.0 * sorted(fast_times)[len(fast_times) // 2]
        naive_ms = None
        speedup = None
        if k <= NAIVE_BENCH_CAP:
            naive_times = []
            for _ in range(max(1, min(reps, 3))):
                t0 = time.perf_counter()
                quad_exp_naive(q, precision_bits)
                naive_times.append(time.perf_counter() - t0)
            naive_ms = 1000.0 * sorted(naive_times)[len(naive_times) // 2]
            speedup = naive_ms / fast_ms if fast_ms > 0 else float("inf")
        rows.append(BenchRow(j, k, fast_ms, naive_ms, speedup))
    return rows


def bench_table(rows: Sequence[BenchRow]) -> str:
    out = ["       k       fast(ms)      naive(ms)    speedup"]
    for r in rows:
        naive = f"{r.naive_ms:12.3f}" if r.naive_ms is not None else "     skipped"
        speed = f"{r.speedup:10.1f}x" if r.speedup is not None else "         --"
        out.append(f"{r.k:10d} {r.fast_ms:12.4f} {naive} {speed}")
    return "\n".join(out)

"""Command-line interface.

Subcommands:
  eval       evaluate a sum: a SumSpec JSON object, a catalog id at given
             parameters, or an exponential sum by --j/--k/--m
  verify     check one catalog identity at one parameter point
  grid       run a verification grid and write a report
  bench      time the reciprocity evaluator against direct summation
  integrals  check the integral identities
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .catalog import Status, catalog_to_json, closed_form, verify
from .engine import (ExtendedGaussParams, ParityError, QuadExpSum, gauss_fast,
                     gauss_naive, quad_exp_naive)
from .exact import cf_to_text
from .harness import (GridConfig, NEGATIVE_SUITE, bench, bench_table,
                      default_workers, run_grid)
from .integrals import INTEGRAL_IDS, IntegralSpec, check_integral
from .sums import SumSpec, direct_sum


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _params_from_args(args) -> dict:
    params = {}
    for name in ("k", "p", "j", "m"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    return params


def _cmd_eval(args) -> int:
    prec = args.prec
    start = time.perf_counter()
    if args.spec:
        s = SumSpec.from_json(json.loads(args.spec))
        value = direct_sum(s, prec)
    elif args.id:
        rhs = closed_form(args.id, **_params_from_args(args))
        value = rhs.value(prec)
        print(f"closed form: {cf_to_text(rhs.closed)}")
    elif args.j is not None and args.k is not None:
        if args.theta is not None:
            params = ExtendedGaussParams(args.j, args.k, args.p or 1,
                                         Fraction(args.theta))
            value = gauss_naive(params, prec)
        else:
            q = QuadExpSum(args.j, args.k, args.m or 0)
            try:
                value = (gauss_naive_or_fast(q, args.naive, prec))
            except ParityError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
    else:
        print("error: give --spec, --id, or --j/--k", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start
    print(f"value = {value}")
    print(f"wall  = {1000 * elapsed:.3f} ms")
    return 0


def gauss_naive_or_fast(q: QuadExpSum, naive: bool, prec: int):
    return quad_exp_naive(q, prec) if naive else gauss_fast(q, prec)


def _cmd_verify(args) -> int:
    rec = verify(args.id, _params_from_args(args), precision_bits=args.prec,
                 tolerance=args.tol, force=args.force)
    print(f"{rec.id} {rec.params}: {rec.status.value}  gap={rec.gap:.3e}  "
          f"({1000 * rec.elapsed:.1f} ms)")
    print(f"  lhs = {rec.lhs_value}")
    print(f"  rhs = {rec.rhs_value}")
    return 0 if rec.status in (Status.PASS, Status.EXACT_PASS) else 1


def _load_config_file(path: str) -> dict:
    with open(path, "rb") as fh:
        if path.endswith(".toml"):
            try:
                import tomllib
            except ImportError:  # Python 3.10
                import tomli as tomllib
            return tomllib.load(fh)
        return json.load(fh)


def _cmd_grid(args) -> int:
    overrides = _load_config_file(args.config) if args.config else {}
    ids = overrides.get("ids", args.ids.split(",") if args.ids else ["all"])
    if not ids:
        ids = ["all"]
    try:
        cfg = GridConfig(
            ids=tuple(ids),
            k_range=tuple(overrides.get("k_range", _parse_range(args.k))),
            p_range=tuple(overrides.get("p_range", _parse_range(args.p))),
            j_range=tuple(overrides.get("j_range", _parse_range(args.j))),
            m_range=tuple(overrides.get("m_range", _parse_range(args.m))),
            precision_bits=int(overrides.get("precision_bits", args.prec)),
            tolerance=float(overrides.get("tolerance", args.tol)),
            workers=int(overrides.get("workers", args.workers)),
            force_invalid=bool(overrides.get("force_invalid", args.negative_suite)),
            expect_fail_ids=tuple(overrides.get("expect_fail_ids",
                                                NEGATIVE_SUITE if args.negative_suite
                                                else ())),
            out_path=overrides.get("out_path", args.out),
            out_format=overrides.get(
                "out_format", "jsonl" if args.format == "json" else args.format),
        )
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    report = run_grid(cfg)
    if cfg.out_path:
        print(f"wrote {len(report.records)} records to {cfg.out_path}")
    else:
        sys.stdout.write(report.to_csv() if cfg.out_format == "csv"
                         else report.to_jsonl())
    print(f"summary: {json.dumps(report.summary, sort_keys=True)}", file=sys.stderr)
    print(f"total time: {report.total_time:.2f} s", file=sys.stderr)
    return 1 if report.summary["unexpected_fail"] else 0


def _cmd_bench(args) -> int:
    k_values = [int(tok) for tok in args.k.split(",")]
    rows = bench(args.j, k_values, reps=args.reps, precision_bits=args.prec)
    print(bench_table(rows))
    return 0


def _cmd_integrals(args) -> int:
    ids = args.id.split(",") if args.id else list(INTEGRAL_IDS)
    status = 0
    for ident in ids:
        spec = IntegralSpec(ident, args.a, args.k, s=args.s, b=args.b)
        rec = check_integral(spec, args.tol)
        print(f"{ident:5s} a={args.a} k={args.k}: {rec.status.value} "
              f"gap={rec.gap:.3e}")
        print(f"  lhs = {rec.lhs_value}")
        print(f"  rhs = {rec.rhs_value}")
        if rec.status is not Status.PASS:
            status = 1
    return status


def _cmd_catalog(args) -> int:
    print(json.dumps(catalog_to_json(), indent=2 if args.pretty else None,
                     sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadgauss",
        description="exact evaluation and verification of quadratic "
                    "Gauss sums and their variants")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a single sum")
    p_eval.add_argument("--spec", help="SumSpec as a JSON object")
    p_eval.add_argument("--id", help="catalog id (with --k/--p/--j/--m)")
    p_eval.add_argument("--j", type=int)
    p_eval.add_argument("--k", type=int)
    p_eval.add_argument("--m", type=int)
    p_eval.add_argument("--p", type=int)
    p_eval.add_argument("--theta", help="rational linear phase, e.g. 1/2")
    p_eval.add_argument("--naive", action="store_true",
                        help="force direct summation")
    p_eval.add_argument("--fast", action="store_true",
                        help="force the reciprocity evaluator (default)")
    p_eval.add_argument("--prec", type=int, default=128)
    p_eval.set_defaults(func=_cmd_eval)

    p_verify = sub.add_parser("verify", help="verify one catalog identity")
    p_verify.add_argument("--id", required=True)
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--p", type=int)
    p_verify.add_argument("--j", type=int)
    p_verify.add_argument("--m", type=int)
    p_verify.add_argument("--prec", type=int, default=128)
    p_verify.add_argument("--tol", type=float, default=1e-30)
    p_verify.add_argument("--force", action="store_true",
                          help="evaluate even out-of-validity points")
    p_verify.set_defaults(func=_cmd_verify)

    p_grid = sub.add_parser("grid", help="run a verification grid")
    p_grid.add_argument("--ids", help="comma list: ids, group letters, or all")
    p_grid.add_argument("--k", default="1:10", help="k range lo:hi")
    p_grid.add_argument("--p", default="1:3")
    p_grid.add_argument("--j", default="1:3")
    p_grid.add_argument("--m", default="-2:2")
    p_grid.add_argument("--prec", type=int, default=128)
    p_grid.add_argument("--tol", type=float, default=1e-30)
    p_grid.add_argument("--workers", type=int, default=default_workers())
    p_grid.add_argument("--format", choices=("json", "jsonl", "csv"),
                        default="jsonl", help="json and jsonl both mean JSON-lines")
    p_grid.add_argument("--out", help="output path (stdout if omitted)")
    p_grid.add_argument("--config", help="TOML or JSON config file")
    p_grid.add_argument("--negative-suite", action="store_true",
                        help="probe out-of-validity points as expected failures")
    p_grid.set_defaults(func=_cmd_grid)

    p_bench = sub.add_parser("bench", help="fast vs naive timings")
    p_bench.add_argument("--j", type=int, default=1)
    p_bench.add_argument("--k", required=True, help="comma list of k values")
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--prec", type=int, default=128)
    p_bench.set_defaults(func=_cmd_bench)

    p_int = sub.add_parser("integrals", help="check the integral identities")
    p_int.add_argument("--id", help="comma list (default: all five)")
    p_int.add_argument("--a", type=float, required=True)
    p_int.add_argument("--k", type=int, required=True)
    p_int.add_argument("--s", type=float, default=0.0)
    p_int.add_argument("--b", type=float, default=0.0)
    p_int.add_argument("--tol", type=float, default=1e-10)
    p_int.set_defaults(func=_cmd_integrals)

    p_cat = sub.add_parser("catalog", help="dump the identity catalog as JSON")
    p_cat.add_argument("--pretty", action="store_true")
    p_cat.set_defaults(func=_cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

import json

import pytest

from quadgauss.cli import main
from quadgauss.harness import (GridConfig, bench, bench_table,
                               grid_points, resolve_ids, run_grid)


def test_resolve_ids_groups_and_all():
    assert resolve_ids(["A"])[:3] == ["A1", "A2", "A3"]
    assert len(resolve_ids(["all"])) == 62
    assert resolve_ids(["A1", "A1", "Hs1"]) == ["A1", "B9"]
    with pytest.raises(KeyError):
        resolve_ids(["Z9"])


def test_grid_config_validation():
    with pytest.raises(ValueError):
        GridConfig(ids=())
    with pytest.raises(ValueError):
        GridConfig(ids=("A1",), k_range=(5, 2))
    with pytest.raises(ValueError):
        GridConfig(ids=("A1",), tolerance=0.0)


def test_grid_points_respects_validity():
    cfg = GridConfig(ids=("C2_even",), k_range=(1, 6))
    pts = grid_points(cfg)
    assert [p["k"] for _, p in pts] == [2, 4, 6]
    cfg_forced = GridConfig(ids=("C2_even",), k_range=(1, 6), force_invalid=True)
    assert len(grid_points(cfg_forced)) == 6


def test_run_grid_summary_counts_match_records():
    cfg = GridConfig(ids=("A1", "A12", "B6"), k_range=(1, 8))
    report = run_grid(cfg)
    assert report.summary["points"] == len(report.records) == 24
    assert sum(report.summary["counts"].values()) == len(report.records)
    assert report.summary["unexpected_fail"] == 0


def test_run_grid_deterministic_across_workers():
    cfg1 = GridConfig(ids=("A1", "A5", "F5"), k_range=(1, 5), workers=1)
    cfg2 = GridConfig(ids=("A1", "A5", "F5"), k_range=(1, 5), workers=2)
    r1, r2 = run_grid(cfg1), run_grid(cfg2)
    assert r1.to_jsonl() == r2.to_jsonl()
    assert r1.to_csv() == r2.to_csv()


def test_run_grid_negative_suite_expected_failures():
    cfg = GridConfig(ids=("F5",), k_range=(2, 12), force_invalid=True,
                     expect_fail_ids=("F5",))
    report = run_grid(cfg)
    fails = [r for r in report.records if r["status"] == "FAIL"]
    assert fails and all(r["expected_negative"] for r in fails)
    assert report.summary["unexpected_fail"] == 0


def test_empty_id_expansion_gives_empty_report():
    cfg = GridConfig(ids=("C2_even",), k_range=(1, 1))  # k=1 is out of validity
    report = run_grid(cfg)
    assert report.records == []
    assert report.summary["points"] == 0


def test_report_formats_round_trip():
    report = run_grid(GridConfig(ids=("A10",), k_range=(1, 3)))
    lines = report.to_jsonl().strip().splitlines()
    assert len(lines) == 4  # 3 records + summary
    for line in lines[:-1]:
        rec = json.loads(line)
        assert rec["status"] in ("PASS", "EXACT_PASS")
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0].startswith("id,params,status")
    assert len(csv_text.splitlines()) == 4


def test_bench_rows_and_table():
    rows = bench(1, [10, 50], reps=1)
    assert all(r.naive_ms is not None for r in rows)
    table = bench_table(rows)
    assert "speedup" in table and "10" in table
    big = bench(1, [3 * 10 ** 6], reps=1)
    assert big[0].naive_ms is None and "skipped" in bench_table(big)


# ---------------------------------------------------------------------------
# CLI


def test_cli_verify_pass(capsys):
    assert main(["verify", "--id", "A1", "--k", "3"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_cli_verify_forced_failure(capsys):
    assert main(["verify", "--id", "F5", "--k", "4", "--force"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_eval_spec_json(capsys):
    code = main(["eval", "--spec",
                 '{"kind":"sin","alternating":true,"lower":1,"upper":2,'
                 '"alpha":1,"delta":4}'])
    assert code == 0
    assert "-0.7071" in capsys.readouterr().out


def test_cli_eval_catalog_id(capsys):
    assert main(["eval", "--id", "F1", "--k", "5"]) == 0
    assert "sqrt(5)" in capsys.readouterr().out


def test_cli_eval_fast_engine(capsys):
    assert main(["eval", "--j", "1", "--k", "101", "--m", "1"]) == 0
    assert main(["eval", "--j", "1", "--k", "101", "--m", "1", "--naive"]) == 0


def test_cli_eval_parity_error(capsys):
    assert main(["eval", "--j", "1", "--k", "101", "--m", "0"]) == 2


def test_cli_grid_to_file(tmp_path, capsys):
    out = tmp_path / "report.jsonl"
    code = main(["grid", "--ids", "A1,A12", "--k", "1:4", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 9
    assert json.loads(lines[-1])["summary"]["unexpected_fail"] == 0


def test_cli_grid_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    assert main(["grid", "--ids", "B9", "--k", "1:5", "--format", "csv",
                 "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0].startswith("id,params")


def test_cli_grid_config_file(tmp_path):
    cfg = tmp_path / "grid.json"
    cfg.write_text(json.dumps({"ids": ["A10"], "k_range": [1, 3]}))
    out = tmp_path / "r.jsonl"
    assert main(["grid", "--config", str(cfg), "--out", str(out)]) == 0
    assert len(out.read_text().strip().splitlines()) == 4


def test_cli_grid_toml_config_file(tmp_path):
    cfg = tmp_path / "grid.toml"
    cfg.write_text('ids = ["A10"]\nk_range = [1, 3]\n')
    out = tmp_path / "r.jsonl"
    assert main(["grid", "--config", str(cfg), "--out", str(out)]) == 0
    assert len(out.read_text().strip().splitlines()) == 4


def test_cli_grid_bad_config_exit_code(tmp_path):
    cfg = tmp_path / "grid.json"
    cfg.write_text(json.dumps({"ids": ["A10"], "k_range": [5, 1]}))
    assert main(["grid", "--config", str(cfg)]) == 2


def test_cli_integrals(capsys):
    assert main(["integrals", "--id", "A1R1", "--a", "0.5", "--k", "2",
                 "--tol", "1e-8"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_bench(capsys):
    assert main(["bench", "--k", "10,100", "--reps", "1"]) == 0
    assert "speedup" in capsys.readouterr().out


def test_cli_catalog_dump(capsys):
    assert main(["catalog"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["entries"]) == 62


def test_workers_env_default(monkeypatch):
    from quadgauss.harness import default_workers
    monkeypatch.setenv("QUADGAUSS_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("QUADGAUSS_WORKERS", "junk")
    assert default_workers() == 1

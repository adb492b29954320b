import json
import os
import subprocess
import sys

import pytest

from conbranch.cli import main

from conftest import fixture_path


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_triangles_table(capsys):
    code, out, err = run_cli(["solve", fixture_path("two_triangles.lp")], capsys)
    assert code == 0
    assert "two_triangles" in out
    fields = out.splitlines()[2].split()
    assert fields[2] == "3" and fields[3] == "4"


def test_solve_cycle_json(capsys):
    code, out, _ = run_cli(
        ["solve", fixture_path("odd_cycle.lp"), "--json", "--cuts"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["pure_lp"] == pytest.approx(5 / 3, abs=1e-9)
    assert report["bound_inc"] == pytest.approx(10 / 33, abs=1e-9)
    assert report["bound"] == pytest.approx(5 / 3 - 10 / 33, abs=1e-9)
    assert len(report["cuts"]) == 5
    assert all(c["kind"] == "le" for c in report["cuts"])


def test_all_modes_run(capsys):
    for mode in ("simple", "complex", "sequential", "huge"):
        code, out, _ = run_cli(
            ["solve", fixture_path("two_triangles.lp"), "--mode", mode], capsys)
        assert code == 0, mode
        assert "optimal" in out


def test_mps_input(capsys):
    code, out, _ = run_cli(["solve", fixture_path("tiny.mps")], capsys)
    assert code == 0
    assert "TINY" in out           # instance named by the NAME card
    assert "optimal" in out


def test_usage_error_on_missing_file(capsys):
    code, _, err = run_cli(["solve", "/nonexistent/model.lp"], capsys)
    assert code == 1


def test_usage_error_on_no_command(capsys):
    assert run_cli([], capsys)[0] == 1


def test_usage_error_on_bad_flag(capsys):
    code, _, _ = run_cli(
        ["solve", fixture_path("tiny.mps"), "--mode", "bogus"], capsys)
    assert code == 1


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.lp"
    bad.write_text("this is not a model\n")
    code, _, err = run_cli(["solve", str(bad)], capsys)
    assert code == 2
    assert "bad.lp" in err or "unknown" in err


def test_parse_error_on_ranges_mps(tmp_path, capsys):
    bad = tmp_path / "r.mps"
    bad.write_text("ROWS\n N obj\n G r\nRANGES\nENDATA\n")
    code, _, err = run_cli(["solve", str(bad)], capsys)
    assert code == 2
    assert "RANGES" in err


def test_report_dir_writes_csv_and_figures(tmp_path, capsys):
    out_dir = tmp_path / "report"
    code, out, err = run_cli(
        ["solve", fixture_path("odd_cycle.lp"), "--report-dir", str(out_dir)],
        capsys)
    assert code == 0
    files = sorted(os.listdir(out_dir))
    assert "report.csv" in files
    pngs = [f for f in files if f.endswith(".png")]
    assert any("weights" in f for f in pngs)
    assert any("bound" in f for f in pngs)
    header = (out_dir / "report.csv").read_text().splitlines()[0]
    assert header.startswith("Instance,")


def test_seed_reproducibility(capsys):
    args = ["solve", fixture_path("odd_cycle.lp"), "--mode", "complex",
            "--json", "--seed", "7"]
    code1, out1, _ = run_cli(args, capsys)
    code2, out2, _ = run_cli(args, capsys)
    assert code1 == code2 == 0
    doc1, doc2 = json.loads(out1), json.loads(out2)
    doc1.pop("timings_ms"), doc2.pop("timings_ms")
    assert doc1 == doc2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "conbranch.cli", "solve",
         fixture_path("two_triangles.lp")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "two_triangles" in proc.stdout

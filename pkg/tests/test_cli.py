import csv
import io
import json
import math
import subprocess
import sys

import pytest

from hlbounds.cli import main, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_norm_json(capsys):
    code, out, _ = run(capsys, "norm", "--family", "P6", "--params", "1,-2.2654", "--p", "12", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    (row,) = doc["rows"]
    assert row["value"] == pytest.approx(0.265449175431079, abs=1e-6)
    assert doc["meta"]["command"] == "norm"
    assert doc["meta"]["config"]["coarse_grid"] == 20001


def test_bound_default_p_and_fractions(capsys):
    code, out, _ = run(capsys, "bound", "--family", "P10", "--params", "3/35,-283/490", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)["rows"]
    assert row["p"] == 20 and row["q"] == 2
    assert row["lower_bound"] == pytest.approx(91.640152, rel=1e-5)


def test_json_round_trip_is_stable(capsys):
    _, out, _ = run(capsys, "bound", "--family", "P3", "--params", "1,-2", "--format", "json")
    doc = json.loads(out)
    assert render(doc, "json") == out


def test_csv_format(capsys):
    code, out, _ = run(capsys, "bound", "--family", "P3", "--params", "1,-2", "--format", "csv")
    assert code == 0
    body = [line for line in out.splitlines() if not line.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    assert float(rows[0]["lower_bound"]) == pytest.approx(math.sqrt(5), rel=1e-9)
    assert out.startswith("# hlbounds")


def test_markdown_format(capsys):
    code, out, _ = run(capsys, "hyper", "--family", "P3", "--params", "1,-2", "--power", "5")
    assert code == 0
    assert "| family |" in out and "finite-m estimate" in out
    assert out.startswith("<!-- hlbounds")


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\ngrid = 1001\nseed = 9\nmax_refine_iters = 150\n")
    code, out, _ = run(capsys, "norm", "--family", "P3", "--params", "1,-2", "--p", "6",
                       "--config", str(cfg), "--seed", "3", "--format", "json")
    assert code == 0
    meta = json.loads(out)["meta"]
    assert meta["config"]["coarse_grid"] == 1001
    assert meta["config"]["rng_seed"] == 3
    assert meta["config"]["max_refine_iters"] == 150
    assert meta["config_file"] == str(cfg)


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "P3", "--p", "6", "--lambda=-2.1:-1.9:0.1", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["lambda"] for r in rows] == pytest.approx([-2.1, -2.0, -1.9])


def test_optimize_and_explore(capsys):
    code, out, _ = run(capsys, "optimize", "--family", "P3", "--grid", "2001", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)["rows"]
    a, b = (float(v) for v in row["params"].split(","))
    assert b / a == pytest.approx(-2.0, abs=0.01)
    code, out, _ = run(capsys, "explore", "--degree", "2", "--grid", "2001", "--format", "json")
    assert code == 0
    assert json.loads(out)["rows"][0]["lower_bound"] >= math.sqrt(2) - 1e-6


def test_reproduce_exit_code_contract(capsys):
    # exit 0 exactly when no comparison has status FAIL; FAIL lines go to stderr
    code, out, err = run(capsys, "reproduce", "--table", "s3", "--format", "json")
    rows = json.loads(out)["rows"]
    failed = [r for r in rows if r["status"] == "FAIL"]
    assert code == (1 if failed else 0)
    assert len(err.splitlines()) == len(failed)


def test_reproduce_pass(capsys):
    code, out, err = run(capsys, "reproduce", "--table", "s2", "--format", "json")
    assert code == 0 and err == ""
    statuses = {r["status"] for r in json.loads(out)["rows"]}
    assert statuses <= {"pass", "annotated"}


@pytest.mark.parametrize(
    "argv",
    [
        ("bound", "--family", "P3", "--params", "1"),
        ("bound", "--family", "P2", "--params", "1.5"),
        ("bound", "--family", "P9", "--params", "1,2"),
        ("hyper", "--family", "P10", "--params", "1,1", "--power", "500"),
        ("norm", "--family", "P3", "--params", "1,-2", "--p", "6", "--grid", "10"),
        ("norm", "--family", "P3", "--params", "1,-2", "--p", "6", "--config", "/nonexistent.cfg"),
    ],
)
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == "" and "error" in err


@pytest.mark.parametrize("argv", [["frobnicate"], ["norm", "--family", "P3", "--params", "1,-2", "--p", "0.5"]])
def test_usage_errors_from_argparse(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_entry_point_subprocess():
    cmd = [sys.executable, "-m", "hlbounds.cli", "bound", "--family", "P3", "--params", "1,-2", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second

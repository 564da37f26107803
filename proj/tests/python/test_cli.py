"""End-to-end checks of the command-line interface."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("CYCLOCOEF_CLI", "")

pytestmark = pytest.mark.skipif(
    not CLI or not os.path.exists(CLI), reason="CYCLOCOEF_CLI not set"
)


def run(*args, expect_code=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert proc.returncode == expect_code, proc.stderr or proc.stdout
    return proc.stdout


def test_coeff_json():
    doc = json.loads(run("coeff", "--n", "105", "--k", "7", "--eps", "1"))
    assert doc["value"] == -2
    doc = json.loads(run("coeff", "--n", "105", "--k", "7", "--engine", "all"))
    assert doc["agree"] is True
    assert doc["values"] == {"naive": -2, "gt": -2, "partition": -2}


def test_coeff_series():
    doc = json.loads(run("coeff", "--n", "6", "--k", "0", "--eps", "-1", "--series", "4"))
    assert doc["values"] == ["1", "1", "0", "-1", "-1"]


def test_coeff_is_deterministic():
    a = run("table", "--id", "4")
    b = run("table", "--id", "4")
    assert a == b


def test_table_csv_matches_fixture_format():
    out = run("table", "--id", "2", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "table,row,col,value,note"
    assert "2,10,e,31/160" in out
    assert "2,16,e,733/4032" in out


def test_table_json():
    doc = json.loads(run("table", "--id", "6", "--kmax", "11"))
    cells = {(r["row"], r["col"]): r["value"] for r in doc["rows"]}
    assert cells[("11", "f")] == "-25/96"
    assert cells[("11", "g")] == "1/16"


def test_table_density_zero_complement():
    doc = json.loads(run("table", "--id", "4", "--kmax", "1"))
    zero = doc["zero_density"][0]
    assert zero["symbolic"] == "1 - (6/pi^2) * 1"
    assert zero["approx"].startswith("0.3920728981")


def test_verify_tables():
    doc = json.loads(run("verify", "--suite", "tables"))
    assert doc["pass"] is True


def test_kmin():
    doc = json.loads(run("kmin", "--v", "-2"))
    assert doc["rows"][0]["k"] == 7
    doc = json.loads(run("kmin", "--v", "0"))
    assert doc["rows"][0]["k"] == 1
    doc = json.loads(run("kmin", "--v", "9", "--ceiling", "5"))
    assert doc["rows"][0]["found"] is False


def test_usage_error_exit_code():
    run("coeff", "--k", "7", expect_code=2)  # missing --n
    run("nonsense", expect_code=2)


def test_bench_smoke():
    doc = json.loads(run("bench", "--k", "13", "--repeat", "1"))
    names = set(doc["timings"].keys())
    assert {"divisor", "partition", "halved", "prime", "odd_partition"} <= names

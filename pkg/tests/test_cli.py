import csv
import io
import json
import subprocess
import sys

import pytest

from jacobispec.cli import (
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    dumps_report,
    parse_params,
    parse_window,
    result_from_report,
    run,
)
from jacobispec.spectral import SpectralResult

CONFLUENT = ["--model", "confluent", "--params", "alpha=0,beta=1,gamma=1"]


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_spectrum_confluent_example():
    code, text = invoke("spectrum", *CONFLUENT, "--window", "0.5,10.5")
    assert code == EXIT_OK
    report = json.loads(text)
    assert list(report) == ["command", "model", "params", "tolerances", "results", "errors",
                            "wall_time_ms", "method"]
    zs = [r["z"] for r in report["results"] if r["kind"] == "eigenvalue"]
    assert zs == pytest.approx([float(j) for j in range(1, 11)], abs=1e-8)
    assert report["wall_time_ms"] is None
    assert report["errors"] == []


def test_spectrum_report_round_trips():
    code, text = invoke("spectrum", *CONFLUENT, "--window", "0.5,4.5")
    report = json.loads(text)
    res = result_from_report(report)
    assert isinstance(res, SpectralResult)
    again = json.loads(dumps_report({**report, "results": [dict(kind="eigenvalue", **e.to_dict())
                                                           for e in res.eigenvalues]}))
    assert result_from_report(again) == res


def test_output_is_byte_identical():
    args = ("spectrum", "--model", "coulomb", "--params", "mu=1,nu=0.5", "--window", "0.1,1")
    assert invoke(*args) == invoke(*args)


def test_timing_flag_records_wall_time():
    _, text = invoke("spectrum", *CONFLUENT, "--window", "0.5,2.5", "--timing")
    assert json.loads(text)["wall_time_ms"] > 0


def test_verify_ffunc_suite():
    code, text = invoke("verify", "--suite", "ffunc")
    assert code == EXIT_OK
    report = json.loads(text)
    assert report["results"]
    assert all(r["passed"] and r["max_error"] < 1e-10 for r in report["results"])


def test_oracle_compare_qbessel_example():
    code, text = invoke("oracle-compare", "--model", "qbessel", "--params", "q=0.5,beta=0.8",
                        "--window", "-0.7,1.1", "--N", "60")
    assert code == EXIT_OK
    report = json.loads(text)
    assert report["max_delta"] < 1e-8
    deltas = [r["delta"] for r in report["results"] if abs(r["char_zero"] or 0) > 1e-6]
    assert deltas and max(deltas) < 1e-8


def test_oracle_compare_flags_poor_truncation():
    # a 3x3 section is far from the infinite spectrum
    code, text = invoke("oracle-compare", *CONFLUENT, "--window", "0.5,10.5", "--N", "3")
    assert code == EXIT_NUMERIC
    assert json.loads(text)["errors"]


def test_eigvec_components_and_csv():
    code, text = invoke("eigvec", *CONFLUENT, "--z", "3", "--count", "6", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [int(r["k"]) for r in rows] == list(range(1, 7))
    assert sum(float(r["re"]) ** 2 for r in rows) == pytest.approx(1.0, rel=1e-12)


def test_eigvec_off_spectrum_is_numeric_failure():
    code, text = invoke("eigvec", *CONFLUENT, "--z", "3.5", "--count", "20")
    assert code == EXIT_NUMERIC
    assert "residual" in json.loads(text)["errors"][0]["error"]


def test_negative_window_value_accepted():
    code, _ = invoke("spectrum", "--model", "qconfluent", "--params", "sigma=1,gamma=0,q=0.5",
                     "--window", "-0.5,-0.05")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["spectrum", *CONFLUENT],
    ["spectrum", *CONFLUENT, "--window", "3,1"],
    ["spectrum", *CONFLUENT, "--window", "1,inf"],
    ["spectrum", "--model", "confluent", "--params", "alpha=0,beta", "--window", "1,2"],
    ["spectrum", "--model", "confluent", "--params", "alpha=0,beta=-1,gamma=1", "--window", "1,2"],
    ["spectrum", "--model", "nope", "--window", "1,2"],
    ["verify", "--suite", "nope"],
    ["frobnicate"],
    ["spectrum", *CONFLUENT, "--window", "1,2", "--root-tol", "0"],
])
def test_usage_errors(argv, capsys):
    out = io.StringIO()
    assert run(argv, stdout=out) == EXIT_USAGE
    assert out.getvalue() == ""
    assert "usage error" in capsys.readouterr().err


def test_env_tolerance_override(monkeypatch):
    monkeypatch.setenv("JS_TOL", "1e-12")
    _, text = invoke("spectrum", *CONFLUENT, "--window", "0.5,1.5")
    assert json.loads(text)["tolerances"]["work_tol"] == 1e-12
    monkeypatch.setenv("JS_TOL", "abc")
    assert invoke("spectrum", *CONFLUENT, "--window", "0.5,1.5")[0] == EXIT_USAGE


def test_parsers():
    assert parse_params("a=1, b=2.5,") == {"a": 1.0, "b": 2.5}
    assert parse_params("") == {}
    assert parse_window("-0.7,1.1") == (-0.7, 1.1)


def test_non_finite_floats_become_null():
    text = dumps_report({"command": "x", "results": [{"v": float("inf")}], "errors": []})
    assert json.loads(text)["results"][0]["v"] is None


def test_output_file(tmp_path):
    path = tmp_path / "r.json"
    code, text = invoke("spectrum", *CONFLUENT, "--window", "0.5,2.5", "--output", str(path))
    assert code == EXIT_OK and text == ""
    assert json.loads(path.read_text())["command"] == "spectrum"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jacobispec", "spectrum", *CONFLUENT, "--window", "0.5,2.5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["results"]) == 2

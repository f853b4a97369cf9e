"""Command-line contract: parsing, exit codes, reports, determinism."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from shnr.cli import load_operator_file, main, matrix_to_json, records_to_csv


def matrix_json(M):
    return matrix_to_json(np.asarray(M, dtype=complex))


@pytest.fixture
def example_file(tmp_path):
    doc = {
        "A": matrix_json([[1, 1], [1, 1]]),
        "T": matrix_json([[2, 2], [0, 0]]),
    }
    path = tmp_path / "example.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def runner():
    return CliRunner()


def test_compute_adjoint_round_trip(runner, example_file, tmp_path):
    result = runner.invoke(main, ["compute", "--input", example_file, "--quantity", "adjoint"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    M = np.array([[complex(re, im) for re, im in doc["data"]]]).reshape(2, 2)
    assert np.allclose(M, [[1, 1], [1, 1]], atol=1e-12)
    # a written matrix re-parses identically
    path = tmp_path / "roundtrip.json"
    path.write_text(json.dumps({"A": matrix_json(np.eye(2)), "T": doc}))
    reparsed = load_operator_file(str(path))["T"]
    assert np.array_equal(reparsed, M)


def test_compute_scan_quantities(runner, example_file):
    result = runner.invoke(main, ["compute", "--input", example_file, "--quantity", "wA"])
    assert result.exit_code == 0
    lo, hi = map(float, result.output.split())
    assert lo <= hi
    assert lo == pytest.approx(2.0, abs=1e-9)

    result = runner.invoke(main, ["compute", "--input", example_file, "--quantity", "normA"])
    assert float(result.output) == pytest.approx(2.0, abs=1e-9)

    result = runner.invoke(main, ["compute", "--input", example_file, "--quantity", "gap"])
    lhs, rhs = map(float, result.output.split())
    assert lhs == pytest.approx(0.0, abs=1e-9)
    assert rhs >= lhs - 1e-9


def test_compute_exit_codes(runner, tmp_path, example_file):
    # membership failure -> 3
    doc = {
        "A": matrix_json([[1, 0], [0, 0]]),
        "T": matrix_json([[0, 1], [0, 0]]),
    }
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    result = runner.invoke(main, ["compute", "--input", str(bad), "--quantity", "wA"])
    assert result.exit_code == 3

    # parse failures -> 2
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    result = runner.invoke(main, ["compute", "--input", str(garbled), "--quantity", "wA"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["compute", "--input", str(tmp_path / "none.json"),
                                  "--quantity", "wA"])
    assert result.exit_code == 2

    # non-finite entries -> 2
    doc = {"A": matrix_json(np.eye(2)), "T": matrix_json(np.eye(2))}
    doc["T"]["data"][0] = [float("nan"), 0.0]
    nan_file = tmp_path / "nan.json"
    nan_file.write_text(json.dumps(doc))
    result = runner.invoke(main, ["compute", "--input", str(nan_file), "--quantity", "normA"])
    assert result.exit_code == 2


def test_verify_section2_example(runner, example_file, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["verify", "--input", example_file, "--suite", "section2",
                                  "--output", str(out)])
    assert result.exit_code == 0
    assert "PASS=11" in result.output
    report = json.loads(out.read_text())
    assert len(report["certificates"]) == 11
    assert report["aggregate"]["verdict_counts"]["FAIL"] == 0
    ids = [rec["id"] for rec in report["certificates"]]
    assert ids[0] == "PWR-BOUNDS"
    # every record's verdict is consistent with its slacks and tolerance
    for rec in report["certificates"]:
        if rec["verdict"] == "PASS" and rec["slacks"] and rec["id"] not in (
            "SELFADJ-EQ", "CHAR-THETA", "CHAR-AB",
        ):
            scale = max([1.0] + [abs(v) for _, v in rec["terms"]])
            assert all(s >= -rec["tol"] * scale for s in rec["slacks"])


def test_verify_missing_s_for_section3(runner, example_file):
    result = runner.invoke(main, ["verify", "--input", example_file, "--suite", "section3"])
    assert result.exit_code == 2
    assert "requires S" in result.output


def test_verify_reports_shift_tightness(runner, tmp_path):
    doc = {"A": matrix_json(np.eye(2)), "T": matrix_json([[0, 1], [0, 0]])}
    path = tmp_path / "shift.json"
    path.write_text(json.dumps(doc))
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["verify", "--input", str(path), "--suite", "section2",
                                  "--output", str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    pwr = next(r for r in report["certificates"] if r["id"] == "PWR-BOUNDS")
    assert abs(pwr["slacks"][0]) <= 1e-9


def test_campaign_csv_and_determinism_across_threads(runner, tmp_path):
    args = ["campaign", "--dim", "3", "--rank", "2", "--trials", "6", "--seed", "11",
            "--suite", "section2"]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    r1 = runner.invoke(main, args + ["--output", str(out1)], env={"SHNR_THREADS": "1"})
    r2 = runner.invoke(main, args + ["--output", str(out2)], env={"SHNR_THREADS": "2"})
    assert r1.exit_code == 0 and r2.exit_code == 0
    assert out1.read_text() == out2.read_text()  # CSV carries no timestamp
    header = out1.read_text().splitlines()[0]
    assert header.split(",") == ["trial", "id", "verdict", "min_slack", "tol",
                                 "terms", "slacks", "notes"]


def test_campaign_json_report_and_validation(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(main, ["campaign", "--dim", "2", "--rank", "2", "--trials", "4",
                                  "--seed", "1", "--suite", "section2",
                                  "--output", str(out), "--format", "json"])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    assert report["metadata"]["spec"]["dim"] == 2
    assert len(report["certificates"]) == 4 * 11
    assert report["aggregate"]["verdict_counts"]["FAIL"] == 0

    result = runner.invoke(main, ["campaign", "--dim", "2", "--rank", "3", "--trials", "1"])
    assert result.exit_code == 2


def test_records_to_csv_shape():
    recs = [{"trial": 0, "id": "PWR-BOUNDS", "verdict": "PASS", "min_slack": 0.25,
             "tol": 1e-8, "terms": [["a", 1.0]], "slacks": [0.25], "notes": ""}]
    text = records_to_csv(recs)
    lines = text.splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("0,PWR-BOUNDS,PASS,0.25,")


def test_campaign_nilpotent_family_tightness(runner, tmp_path):
    out = tmp_path / "nilpotent.json"
    result = runner.invoke(main, ["campaign", "--dim", "2", "--rank", "2", "--trials", "25",
                                  "--seed", "3", "--family", "nilpotent_classical",
                                  "--suite", "section2", "--output", str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    pwr = [r for r in report["certificates"] if r["id"] == "PWR-BOUNDS"]
    assert len(pwr) == 25
    assert all(abs(rec["slacks"][0]) <= 1e-9 for rec in pwr)


def test_campaign_suite_all_smoke(runner, tmp_path):
    out = tmp_path / "all.json"
    result = runner.invoke(main, ["campaign", "--dim", "4", "--rank", "2", "--trials", "5",
                                  "--seed", "7", "--suite", "all", "--output", str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    assert report["aggregate"]["verdict_counts"]["FAIL"] == 0
    assert len(report["certificates"]) == 5 * 22

import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from polybern2.cli import run, run_to_string
from polybern2.numbertheory import KNOWN_FRACTIONAL_PARTS
from polybern2.polynum import pb2_explicit


def ok(argv):
    code, text = run_to_string(argv)
    assert code == 0, text
    return text


def test_stirling():
    assert ok(["stirling", "--kind", "2", "--level", "2", "--n", "5", "--k", "4"]) == "30\n"
    assert ok(["stirling", "--kind", "1", "--level", "2", "--n", "4", "--k", "2"]) == "49\n"


def test_values():
    assert ok(["bernoulli2", "--n", "12"]) == "29167388522/1365\n"
    assert ok(["pb2", "--n", "4", "--k", "-1"]) == "114\n"
    assert ok(["pb2", "--n", "4", "--k", "1"]) == "62/15\n"
    assert ok(["pc2", "--n", "4", "--k", "1"]) == "-17/15\n"
    assert ok(["congruence", "--n", "4", "--k", "1", "--mod", "5"]) == "4\n"


def test_vsc():
    text = ok(["vsc", "--n", "9"])
    assert text.rstrip().endswith("defect = 1")
    assert "3, 7, 19" in text
    payload = json.loads(ok(["vsc", "--n", "8", "--format", "json"]))
    assert payload["result"] == "0"
    assert payload["command"] == "vsc"
    assert [p for p, _ in payload["terms"]] == ["3", "5", "17"]


def test_frac_table_csv():
    rows = list(csv.reader(io.StringIO(ok(["table", "frac", "--max", "20", "--format", "csv"]))))
    assert rows[0] == ["n", "frac"]
    assert len(rows) == 12
    assert [Fraction(v) for _, v in rows[1:]] == list(KNOWN_FRACTIONAL_PARTS)


def test_cong_table():
    rows = list(csv.reader(io.StringIO(ok(["table", "cong", "--mod", "7", "--format", "csv"]))))
    assert rows[1] == ["0", "6", "6", "0", "1", "1", "0"]
    assert rows[6][5] == "2"
    assert len(rows) == 7


def test_stirling_triangle():
    payload = json.loads(ok(["table", "stirling2", "--level", "3", "--n", "4", "--format", "json"]))
    assert payload["rows"][4] == ["4", "0", "1", "73", "36", "1"]
    assert payload["columns"][0] == "n"


def test_json_round_trip():
    payload = json.loads(ok(["pb2", "--n", "10", "--k", "2", "--format", "json"]))
    assert payload["command"] == "pb2"
    assert payload["params"] == {"n": 10, "k": 2}
    assert Fraction(payload["result"]) == pb2_explicit(5, 2)


@pytest.mark.parametrize(
    "argv",
    [
        ["pb2", "--n", "3", "--k", "1"],
        ["bernoulli2", "--n", "5"],
        ["bogus"],
        ["stirling", "--n", "3"],
        ["stirling", "--level", "0", "--n", "3", "--k", "1"],
        ["table", "cong", "--mod", "11"],
        ["table", "frac", "--max", "100000"],
        ["congruence", "--n", "0", "--k", "1", "--mod", "5"],
        ["pb2", "--n", "2", "--k", "1", "--format", "xml"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, text = run_to_string(argv)
    assert code == 1
    assert text == ""
    assert "error" in capsys.readouterr().err


def test_verify_reduced():
    code, text = run_to_string(["verify", "--nmax", "3", "--kmax", "2"])
    assert code == 0
    assert text.rstrip().endswith("all suites passed")


def test_verify_detects_injected_fault():
    code, text = run_to_string(["verify", "--nmax", "3", "--kmax", "2", "--inject-fault"])
    assert code == 2
    assert "VERIFICATION FAILED" in text
    # the fault is undone afterwards
    assert ok(["stirling", "--level", "2", "--n", "3", "--k", "2"]) == "5\n"


def test_verify_json():
    payload = json.loads(ok(["verify", "--nmax", "2", "--kmax", "1", "--format", "json"]))
    assert payload["command"] == "verify"
    assert all(status == "pass" for _, status, _ in payload["result"])


def test_verify_default_bounds():
    code, _ = run_to_string(["verify"])
    assert code == 0


def test_run_writes_to_stdout(capsys):
    assert run(["bernoulli2", "--n", "2"]) == 0
    assert capsys.readouterr().out == "2/3\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polybern2", "bernoulli2", "--n", "10"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "6936718/33\n"

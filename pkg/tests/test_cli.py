import json
import shutil
import subprocess
from pathlib import Path

import pytest

from helpers import WORKED_EXAMPLE, TWO_SLOPE_TRUE
from mahler_rs.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_worked_example(capsys):
    code, out, _ = run(capsys, "decide", str(GOLDEN / "worked_example.json"))
    assert code == 0
    assert "reason: AllTruncatedSolutionsFound" in out


def test_decide_four_slopes(capsys):
    code, out, _ = run(capsys, "decide", str(GOLDEN / "four_slopes.json"))
    assert code == 1
    assert "SlopeDenominator(1/4)" in out


def test_decide_json_and_parallel(capsys, tmp_path):
    src = tmp_path / "eq.txt"
    src.write_text(WORKED_EXAMPLE + "\n")
    code, out, _ = run(capsys, "decide", str(src), "--json", "--no-shortcuts")
    serial = json.loads(out)
    code2, out2, _ = run(capsys, "decide", str(src), "--json", "--no-shortcuts", "--parallel")
    assert code == code2 == 0
    assert json.loads(out2) == serial


def test_trace_table(capsys):
    code, out, _ = run(capsys, "trace", WORKED_EXAMPLE, "--slope", "2")
    assert code == 0
    assert "-2  -λ + 1  λ - 1  -1" in out
    assert "f = (λ - 1)*z^-3 + z^-2" in out


def test_polygon_and_exponents(capsys):
    code, out, _ = run(capsys, "polygon", WORKED_EXAMPLE, "--json")
    assert code == 0 and [e["slope"] for e in json.loads(out)["edges"]] == ["2", "3"]
    code, out, _ = run(capsys, "exponents", WORKED_EXAMPLE)
    assert "c=1: m_1=1 (s=0), m_2=1 (s=1)" in out


def test_prefix(capsys):
    code, out, _ = run(capsys, "prefix", str(GOLDEN / "four_slopes.json"), "--order", "9",
                       "--slope", "1", "--json")
    assert code == 0
    (entry,) = [e for e in json.loads(out) if e["class"]["label"] == "c=-2"]
    assert [t["v"] for t in entry["terms"]] == ["3", "4", "5", "6", "7", "8"]


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", TWO_SLOPE_TRUE, "--p", "5,7,11")
    assert code == 0
    rows = [ln for ln in out.splitlines() if ln[:2].strip().isdigit()]
    assert len(rows) == 3 and all(" true " in r for r in rows)
    assert "agreement over p > nu: yes" in out


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", str(GOLDEN / "alpha2_inverse.json"))
    assert code == 0
    assert "DISAGREE" not in out


@pytest.mark.parametrize("argv", [
    ["decide", "0.5*f(z^2) + f(z) = 0"],
    ["decide", "does-not-exist.json"],
    ["prefix", WORKED_EXAMPLE, "--order", "2", "--slope", "2"],
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("mahler-rs:")


def test_precision_error_names_order(capsys, tmp_path):
    src = tmp_path / "eq.txt"
    src.write_text("z^5*f(z^4) + (O(z))*f(z^2) + f(z) = 0\n")
    code, _, err = run(capsys, "decide", str(src))
    assert code == 2 and "required truncation order" in err


@pytest.mark.skipif(shutil.which("mahler-rs") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["mahler-rs", "decide", str(GOLDEN / "alpha2_inverse.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "TruncatedSolutionMissing" in proc.stdout

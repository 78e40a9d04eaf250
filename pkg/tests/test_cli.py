import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from zetalab import cli
from zetalab.zeta import WeilReport

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_COMMANDS = {
    "count_circle": ["count", "-e", "x^2+y^2-1", "-p", "5"],
    "count_conic": ["count", "-e", "x0^2+x1^2+x2^2", "--projective", "-p", "3"],
    "weil_x3_minus_x": ["weil", "-e", "x^3 - x", "-p", "7"],
    "weil_genus2": ["weil", "-e", "x^5 - x", "-p", "5", "-B", "6"],
    "gauss_50": ["gauss", "--max", "50"],
    "tau_100": ["tau", "-B", "100", "--all-checks"],
    "expsum_cubic": ["expsum", "-e", "x^3+x", "-p", "11"],
    "diagonal_quartic": ["diagonal", "-a", "1,1", "-k", "4,2", "--rhs", "1", "-p", "13"],
    "langweil_circle": ["langweil", "-e", "x^2+y^2-1", "--primes", "5,7,11", "-d", "1", "--deg", "2"],
}


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


def schema(value):
    """Key structure and JSON types, ignoring values."""
    if isinstance(value, dict):
        return {k: schema(v) for k, v in value.items()}
    if isinstance(value, list):
        return [schema(v) for v in value[:1]]
    return type(value).__name__


def same_values(a, b):
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(same_values(a[k], b[k]) for k in a)
    if isinstance(a, list):
        return len(a) == len(b) and all(same_values(x, y) for x, y in zip(a, b))
    if isinstance(a, str) and isinstance(b, str):
        # float fields are decimal strings; compare them numerically
        try:
            return abs(float(a) - float(b)) <= 1e-9 * max(1.0, abs(float(b)))
        except ValueError:
            return a == b
    return a == b and type(a) is type(b)


@pytest.mark.parametrize("name", sorted(GOLDEN_COMMANDS))
def test_golden_json(name):
    code, text = run(GOLDEN_COMMANDS[name] + ["--format", "json"])
    assert code == 0
    got = [json.loads(line) for line in text.splitlines()]
    want = [json.loads(line) for line in (GOLDEN / f"{name}.jsonl").read_text().splitlines()]
    assert [schema(r) for r in got] == [schema(r) for r in want]
    assert same_values(got, want)


def test_json_has_no_nan_and_floats_are_strings():
    code, text = run(GOLDEN_COMMANDS["weil_x3_minus_x"] + ["--format", "json"])
    rec = json.loads(text)
    assert set(rec) == {"p", "g", "counts", "zeta", "epsilon", "root_moduli", "hasse_slack", "verdicts"}
    assert set(rec["verdicts"]) == {"rational", "functional_eq", "rh", "schmidt", "hasse"}
    assert all(isinstance(m, str) for m in rec["root_moduli"])
    assert "NaN" not in text and "Infinity" not in text


def test_count_example_values():
    assert run(["count", "-e", "x^2+y^2-1", "-p", "5", "--format", "json"]) == (0, '{"N": 4}\n')
    code, text = run(["count", "-e", "x^2+y^2-1", "-p", "3", "-n", "2", "--format", "json"])
    assert code == 0 and json.loads(text) == {"N": 8}


def test_count_from_file(tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("# two conditions\nx + y - 1\nx - y\n")
    code, text = run(["count", "-f", str(f), "-p", "7", "--format", "json"])
    assert code == 0 and json.loads(text) == {"N": 1}


def test_weil_genus_two():
    code, text = run(["weil", "-e", "x^5 - x", "-p", "5", "-B", "6", "--format", "json"])
    rec = json.loads(text)
    assert code == 0 and rec["g"] == 2 and len(rec["zeta"]["num"]) == 5


def test_gauss_records():
    code, text = run(["gauss", "--max", "50", "--format", "json"])
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == 0
    assert [r["p"] for r in rows[:-1]] == [5, 13, 17, 29, 37, 41]
    assert rows[-1] == {"summary": {"records": 6, "pass": 6, "fail": 0}}


def test_csv_and_text_formats(tmp_path):
    code, text = run(["gauss", "--max", "20", "--format", "csv"])
    lines = text.splitlines()
    assert code == 0 and lines[0].startswith("p,a,b")
    assert lines[-1] == "# records=3 pass=3 fail=0"
    code, text = run(["gauss", "--max", "20"])
    assert code == 0 and "pass=3" in text
    dump = tmp_path / "tau.csv"
    code, _ = run(["tau", "-B", "5", "--csv", str(dump)])
    assert code == 0
    assert dump.read_text().splitlines()[:3] == ["n,tau", "1,1", "2,-24"]


@pytest.mark.parametrize("argv,code,message", [
    (["count", "-e", "x^2+y^2-1", "-p", "4"], 1, "4 is not prime"),
    (["weil", "-e", "x^2", "-p", "5"], 1, "not squarefree"),
    (["count", "-e", "2x", "-p", "5"], 1, "column 2"),
    (["count", "-e", "x + x1", "-p", "5"], 1, "mixed"),
    (["count", "-p", "5"], 1, ""),
    (["frobnicate"], 1, ""),
    (["weil", "-e", "x^3-x", "-p", "7", "--tol", "0.5"], 1, "--tol"),
    (["count", "-e", "x^2+y^2-1", "-p", "101", "--budget", "100"], 2, "exceeds budget"),
    (["count", "-e", "x", "-p", "2", "-n", "21"], 2, "exceeds policy bound"),
    (["tau", "-B", "1000000"], 2, "exceeds policy bound"),
])
def test_exit_codes(argv, code, message, capsys):
    got, _ = run(argv)
    assert got == code
    assert message in capsys.readouterr().err


def test_verdict_failure_exits_three(monkeypatch):
    real = cli.weil_report

    def broken(*args, **kwargs):
        r = real(*args, **kwargs)
        return WeilReport(**{**r.__dict__, "verdicts": {**r.verdicts, "rh": False}})

    monkeypatch.setattr(cli, "weil_report", broken)
    code, text = run(["weil", "-e", "x^3 - x", "-p", "7", "--format", "json"])
    assert code == 3
    assert json.loads(text)["verdicts"]["rh"] is False


def test_budget_environment_variable():
    env = {**os.environ, "ZETALAB_BUDGET": "50"}
    proc = subprocess.run([sys.executable, "-m", "zetalab", "count", "-e", "x^2+y^2-1", "-p", "11"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 2
    assert "budget 50" in proc.stderr
    assert proc.stdout == ""


def test_diagnostics_go_to_stderr():
    proc = subprocess.run([sys.executable, "-m", "zetalab", "count", "-e", "x^2", "-p", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout == "" and "not prime" in proc.stderr

import csv
import io
import json
import os
import subprocess
import sys

import pytest

from primesums.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_eval():
    code, out = run("eval", "--p", "5", "--k", "2", "--s", "1")
    assert code == 0 and "2.23606797750" in out
    code, out = run("eval", "--p", "5", "--k", "2", "--s", "0", "--format", "records")
    rec = json.loads(out)
    assert float(rec["re"]) == 5 and float(rec["magnitude"]) == 5


def test_eval_not_prime(capsys):
    code, _ = run("eval", "--p", "6", "--k", "2", "--s", "1")
    assert code == 2
    assert "NotPrime" in capsys.readouterr().err


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "primesums", "eval", "--p", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_bounds_table():
    code, out = run("bounds", "--p", "421", "--k", "20", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    vals = {(r["bound"], r["d"]): float(r["value"]) for r in rows}
    assert vals[("thm4_i", "5")] == pytest.approx(275.49, abs=0.01)
    assert vals[("thm10", "5")] == pytest.approx(388.10, abs=0.01)
    assert vals[("classical", "")] == pytest.approx(389.85, abs=0.01)


def test_bounds_reduction_and_candidates():
    code, out = run("bounds", "--p", "13", "--k", "7")
    assert code == 0 and "reduced to k=1" in out
    code, out = run("bounds", "--p", "13", "--k", "12", "--format", "csv")
    ds = [r["d"] for r in csv.DictReader(io.StringIO(out)) if r["bound"] == "thm4_i"]
    assert ds == ["3", "4"]


def test_spectrum_output():
    code, out = run("spectrum", "--p", "13", "--d", "3", "--n", "4", "--s", "1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 + 4 + 1
    assert lines[-1].startswith("recombined")
    code, _ = run("spectrum", "--p", "13", "--d", "5", "--n", "2", "--s", "1")
    assert code == 2


def test_scan_stdout():
    code, out = run("scan", "--p-min", "5", "--p-max", "13")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("p,k,best_d,n,max_abs")
    assert len(lines) == 1 + 13


def test_scan_records(tmp_path):
    path = tmp_path / "s.jsonl"
    code, _ = run("scan", "--p-min", "5", "--p-max", "13", "--format", "records", "--out", str(path))
    recs = [json.loads(l) for l in path.read_text().splitlines()]
    assert code == 0 and len(recs) == 13 and recs[0]["p"] == "5"


def test_verify_exit_codes(tmp_path):
    code, out = run("verify", "--p-max", "11", "--suite", "moments,spectrum")
    assert code == 0
    # one printed-moment finding per divisor k of p-1: 3 + 4 + 4 for p = 5, 7, 11
    assert out.strip().splitlines()[-1].endswith("0 failures, 11 findings")
    # thm9 case 2 is exceeded at p = 13 (d = 3, n = 2)
    code, out = run("verify", "--p-min", "13", "--p-max", "13", "--suite", "cosets")
    assert code == 1
    code, _ = run("verify", "--suite", "bogus")
    assert code == 2


def test_verify_threads_env(tmp_path, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.setenv("PRIMESUMS_THREADS", "3")
    run("verify", "--p-max", "41", "--out", str(a))
    run("verify", "--p-max", "41", "--threads", "1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_backends_emit_identical_reports(tmp_path):
    outs = []
    for pure in ("0", "1"):
        path = tmp_path / f"r{pure}.csv"
        env = {**os.environ, "PRIMESUMS_PURE": pure}
        subprocess.run([sys.executable, "-m", "primesums", "verify", "--p-max", "31", "--out", str(path)],
                       env=env, capture_output=True, check=False)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]

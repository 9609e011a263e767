import csv
import io
import math

import pytest

from primesums.errors import ConfigError
from primesums.prime_field import build_field_context
from primesums.verify import (
    REPORT_COLUMNS,
    SCAN_COLUMNS,
    ScanConfig,
    report_text,
    run_verify,
    scan,
    scan_pair,
    suite_bounds,
    suite_cosets,
    suite_lemma7,
    suite_moments,
    suite_spectrum,
    summary_line,
    thm4_crossover,
    write_scan_csv,
)


def by_id(results, check_id):
    return [r for r in results if r.check_id == check_id]


def test_moments_p5():
    res = suite_moments(build_field_context(5), 2)
    (a,) = by_id(res, "moment.S")
    assert a.status == "pass" and a.observed == pytest.approx(45) and a.expected == 45
    (b,) = by_id(res, "moment.S.printed")
    assert b.status == "finding" and b.expected == 40
    (dev,) = by_id(res, "moment.S.deviation")
    assert dev.status == "pass" and dev.observed == pytest.approx(5)
    (c,) = by_id(res, "moment.T")
    assert c.params == {"p": 5, "k": 2, "d": 1, "n": 2, "e": 1}
    assert c.observed == pytest.approx(20) and c.status == "pass"


def test_spectrum_p13():
    res = suite_spectrum(build_field_context(13))
    sub = [r for r in res if r.params["d"] == 3 and r.params["n"] == 4]
    assert len(sub) == 13 and all(r.status == "pass" for r in sub)
    zero = [r for r in res if r.params["d"] == 2 and r.params["n"] == 3 and r.params["s"] == 0]
    assert zero[0].observed == pytest.approx(13) and zero[0].expected == pytest.approx(13)
    assert all(r.params["n"] >= 2 for r in res)


def test_lemma7_p7_and_p13():
    res = suite_lemma7(build_field_context(7))
    q = [r for r in res if r.check_id == "incomplete.quadratic" and r.params["d"] == 3]
    assert q and q[0].observed == pytest.approx(3) and q[0].status == "pass"
    res = suite_lemma7(build_field_context(13))
    e2 = [r for r in res if r.params.get("d") == 3 and r.params.get("n") == 4 and r.params.get("e") == 2]
    assert {r.check_id for r in e2} >= {"incomplete.bound", "incomplete.quartic"}
    assert all(r.params["e"] >= 1 for r in res)


def test_cosets_p13():
    res = suite_cosets(build_field_context(13))
    const = [r for r in res if r.check_id == "coset.constancy" and r.params["d"] == 3 and r.params["n"] == 4]
    assert len(const) == 3 and all(r.status == "pass" for r in const)
    gauss = by_id(res, "gauss.magnitude")
    assert len(gauss) == 11  # one per non-principal character
    assert all(abs(r.observed - math.sqrt(13)) < 1e-9 for r in gauss)
    (t9,) = [r for r in res if r.check_id == "bound.thm9_1" and r.params["d"] == 3
             and r.params["n"] == 4 and r.params["e"] == 1]
    assert t9.expected == pytest.approx(3 * (1 + 12 / math.sqrt(13)) * 13)


def test_bounds_suite_p13_and_p5():
    res = suite_bounds(build_field_context(13), 3)
    (cl,) = by_id(res, "bound.classical")
    assert cl.status == "pass" and cl.expected == pytest.approx(2 * math.sqrt(13))
    (re,) = by_id(res, "real.odd_k")
    assert re.status == "pass"
    res = suite_bounds(build_field_context(5), 2)
    (tight,) = by_id(res, "bound.classical.tight")
    assert tight.status == "pass" and tight.observed == pytest.approx(math.sqrt(5))


def test_worked_case_421():
    res = suite_bounds(build_field_context(421), 20)
    got = {(r.check_id, r.params.get("d")): r for r in res}
    assert got[("bound.thm4_i", 5)].status == "pass"
    assert got[("bound.thm10", 5)].expected == pytest.approx(388.0999, abs=1e-3)
    assert got[("bound.classical", None)].expected == pytest.approx(389.8474, abs=1e-3)


def test_harness_catches_bound_violation():
    # brute force: max |S_6| at p = 157 is about 56.19, above the thm4_i value at d = 3
    res = suite_bounds(build_field_context(157), 6)
    bad = [r for r in res if r.status == "fail"]
    assert {r.check_id for r in bad} >= {"bound.thm4_i", "bound.thm4_ii"}
    assert all(r.observed == pytest.approx(56.189, abs=1e-3) for r in bad)


def test_scan_rows_and_columns(tmp_path):
    out = tmp_path / "scan.csv"
    recs = scan(ScanConfig(p_min=5, p_max=13, out_path=str(out)))
    assert [(r.p, r.k) for r in recs] == [
        (5, 2), (5, 4), (7, 2), (7, 3), (7, 6), (11, 2), (11, 5), (11, 10),
        (13, 2), (13, 3), (13, 4), (13, 6), (13, 12),
    ]
    rows = list(csv.DictReader(out.open()))
    assert tuple(rows[0].keys()) == SCAN_COLUMNS
    for row in rows:
        live = [float(row[c]) for c in SCAN_COLUMNS[6:13] if row[c]]
        assert float(row["max_abs"]) <= min(live) + 1e-6 * math.sqrt(int(row["p"]))
    assert rows[0]["mvw"] == ""  # p = 5, k = 2: (p-1)/k even


def test_scan_ratio_clusters_near_one():
    recs = scan(ScanConfig(p_min=5, p_max=400))
    mean = sum(r.rms_ratio for r in recs) / len(recs)
    assert 0.8 < mean < 1.6


def test_crossover():
    recs = scan(ScanConfig(p_min=5, p_max=200, k_mode=[6, 12]))
    first = thm4_crossover(recs)
    for k, p in first.items():
        r = next(r for r in recs if r.k == k and r.p == p)
        assert r.bounds["thm4_i"] < r.bounds["classical"]


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        scan(ScanConfig(p_min=24, p_max=28))
    with pytest.raises(ConfigError):
        scan(ScanConfig(p_min=3, p_max=13))
    with pytest.raises(ConfigError):
        run_verify(ScanConfig(p_max=13, suites=("nope",)))
    with pytest.raises(OSError):
        scan(ScanConfig(p_min=5, p_max=7, out_path=str(tmp_path / "missing" / "x.csv")))


def test_report_deterministic_across_threads():
    a = report_text(run_verify(ScanConfig(p_max=61, threads=1)))
    b = report_text(run_verify(ScanConfig(p_max=61, threads=4)))
    assert a == b
    assert a.splitlines()[0] == ",".join(REPORT_COLUMNS)
    buf1, buf2 = io.StringIO(), io.StringIO()
    cfg = ScanConfig(p_min=5, p_max=300)
    write_scan_csv(scan(cfg), buf1)
    cfg.threads = 3
    write_scan_csv(scan(cfg), buf2)
    assert buf1.getvalue() == buf2.getvalue()


def test_every_claim_has_a_check():
    res = run_verify(ScanConfig(p_min=5, p_max=61))
    ids = {r.check_id for r in res}
    required = {
        "sum.batch_consistency", "bound.classical", "bound.classical.tight", "real.odd_k",
        "bound.mvw", "bound.hbk", "bound.thm4_i", "bound.thm4_ii", "bound.thm4_iii",
        "reduce.gcd", "moment.S", "moment.S.printed", "moment.S.deviation",
        "spectrum.identity", "incomplete.bound", "incomplete.closed_form",
        "incomplete.quadratic", "incomplete.quartic", "moment.T", "coset.constancy",
        "gauss.magnitude", "bound.thm9_1", "bound.thm9_2", "bound.thm9_3",
        "fk.stationary", "conjecture.line",
    }
    assert required <= ids
    assert summary_line(res).endswith("findings")


def test_thm10_checked_in_range():
    res = suite_bounds(build_field_context(421), 20)
    assert by_id(res, "bound.thm10")


def test_scan_pair_421():
    r = scan_pair(build_field_context(421), 20)
    assert r.best_d == 5 and r.n == 4
    assert r.bounds["thm4_ii"] is None
    assert r.tightest_bound == "thm4_iii"

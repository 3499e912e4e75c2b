import csv
import json

from matrealize.classify import EMPTY, IRREDUCIBLE, REDUCIBLE, UNCLASSIFIED, system_from_strings
from matrealize.enumeration import enumerate_matroids
from matrealize.pipeline import (
    CSV_COLUMNS,
    RunOptions,
    analyze_matroid,
    mask_timings,
    report_json,
    run_all,
    run_case,
    summary_table,
    validate_report,
    write_csv,
)
from matrealize.matroid import uniform_matroid

import pytest


def kinds(report):
    return {r["verdict"]["kind"] for r in report.records}


def test_square_case_short_circuits():
    rep = run_case(2, 2)
    assert rep.matroid_count == 1
    for r in rep.records:
        assert r["template"]["s_M"] == 0
        assert r["verdict"]["kind"] in (IRREDUCIBLE, EMPTY)


def test_case_2_4():
    rep = run_case(2, 4)
    assert rep.matroid_count == len(enumerate_matroids(2, 4))
    assert kinds(rep) <= {IRREDUCIBLE, EMPTY}
    assert rep.passed
    assert validate_report(rep.to_json()) == []


def test_u24_record():
    r = analyze_matroid(uniform_matroid(2, 4))
    assert r["template"]["rows"] == [[1, 0, 1, 1], [0, 1, 1, "t1"]]
    assert r["system"]["equalities"] == []
    assert r["verdict"]["family"] == "AffineSpace"
    assert r["witness"] == ["2"]


def test_small_cases_pass():
    reports, passed = run_all(RunOptions(cases=((2, 4), (2, 5), (3, 5))))
    assert passed
    assert "global verdict: PASS" in summary_table(reports)


def test_fault_injection_fails():
    fake = system_from_strings(["t1*t2"], 2)
    reports, passed = run_all(RunOptions(cases=((2, 4), (2, 5)), injected=[("rank-2 quadric", fake)]))
    assert not passed
    flagged = [r for r in reports[0].records if r.get("injected")]
    assert len(flagged) == 1 and flagged[0]["verdict"]["kind"] == REDUCIBLE
    assert not any(r.get("injected") for r in reports[1].records)
    assert "global verdict: FAIL" in summary_table(reports)


def test_short_circuit_agrees_with_general_path():
    for case in [(2, 3), (3, 4), (1, 4), (3, 3)]:
        fast = run_case(*case, options=RunOptions(short_circuit=True))
        slow = run_case(*case, options=RunOptions(short_circuit=False))
        assert [r["verdict"]["kind"] for r in fast.records] == [r["verdict"]["kind"] for r in slow.records]
        assert all(r["template"]["s_M"] == 0 for r in fast.records)


def test_report_validation_detects_tampering():
    data = run_case(2, 4).to_json()
    assert validate_report(data) == []
    bad = json.loads(json.dumps(data))
    bad["tallies"][IRREDUCIBLE] += 1
    assert validate_report(bad)
    bad = json.loads(json.dumps(data))
    del bad["records"][0]["verdict"]["trace"]
    assert validate_report(bad)


def test_reports_deterministic_across_jobs():
    a = run_case(3, 5, options=RunOptions(jobs=1))
    b = run_case(3, 5, options=RunOptions(jobs=2))
    assert json.dumps(mask_timings(a.to_json()), sort_keys=True) == \
        json.dumps(mask_timings(b.to_json()), sort_keys=True)


def test_mask_timings():
    rep = json.loads(report_json(run_case(2, 3)))
    masked = mask_timings(rep)
    assert masked["wall_time_s"] is None
    assert all(r["ms"] is None for r in masked["records"])


def test_csv_columns(tmp_path):
    rep = run_case(2, 4)
    out = tmp_path / "s.csv"
    write_csv(out, [rep])
    rows = list(csv.reader(out.open()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 1 + rep.matroid_count


def test_per_matroid_failure_is_captured(monkeypatch):
    import matrealize.pipeline as pl

    def boom(*a, **k):
        raise RuntimeError("boom")
    monkeypatch.setattr(pl, "fill_matrix", boom)
    r = analyze_matroid(uniform_matroid(2, 4))
    assert r["verdict"]["kind"] == UNCLASSIFIED and "boom" in r["verdict"]["certificate"]["error"]


def test_catalog_case_mismatch():
    with pytest.raises(ValueError):
        run_case(2, 5, enumerate_matroids(2, 4))

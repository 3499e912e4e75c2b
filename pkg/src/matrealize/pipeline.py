"""Run the irreducibility test over whole cases and write reports.

For each matroid of a case: pick the first basis in reverse lexicographic
order, build the template, generate the defining system and classify it.
When the classifier cannot certify the system for that pivot basis the next
basis (same order) is tried; the reduced realization spaces for different
pivots are isomorphic, so any certified pivot settles the matroid.
"""

from __future__ import annotations

import csv
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .classify import EMPTY, IRREDUCIBLE, REDUCIBLE, UNCLASSIFIED, Verdict, classify_variety
from .enumeration import Catalog, enumerate_matroids
from .errors import ContradictionDetected
from .frame import compute_frame
from .matroid import Matroid, first_basis_revlex, revlex_key
from .realize import PolySystem, fill_matrix, find_rational_point, generate_system

CASES = ((2, 4), (2, 5), (2, 6), (2, 7), (3, 5), (3, 6), (3, 7), (4, 6), (4, 7), (5, 7))
SCHEMA = "matrealize-report/1"
TIMING_FIELDS = ("ms", "wall_time_s", "total_wall_time_s")
VERDICT_KINDS = (IRREDUCIBLE, EMPTY, REDUCIBLE, UNCLASSIFIED)


@dataclass
class RunOptions:
    jobs: int = 1
    witness_budget: int = 10_000   # search nodes per matroid; 0 disables
    witness_height: int = 3
    saturate: bool = True          # drop equality factors shared with inequalities
    pivot_fallback: bool = True    # retry other pivot bases when uncertified
    short_circuit: bool = True     # settle s_M = 0 systems without the classifier
    cases: tuple = CASES
    injected: list = field(default_factory=list)  # (label, PolySystem) pairs


@dataclass
class CaseReport:
    case: tuple
    records: list
    wall_time_s: float = 0.0

    @property
    def matroid_count(self):
        return len(self.records)

    @property
    def tallies(self):
        counts = Counter(r["verdict"]["kind"] for r in self.records)
        return {k: counts.get(k, 0) for k in VERDICT_KINDS}

    @property
    def family_tallies(self):
        counts = Counter(r["verdict"]["family"] for r in self.records
                         if r["verdict"]["kind"] == IRREDUCIBLE)
        return dict(sorted(counts.items()))

    @property
    def passed(self):
        t = self.tallies
        return t[REDUCIBLE] == 0 and t[UNCLASSIFIED] == 0

    def to_json(self) -> dict:
        d, m = self.case
        return {
            "schema": SCHEMA,
            "generator": f"matrealize {__version__}",
            "case": [d, m],
            "matroid_count": self.matroid_count,
            "tallies": self.tallies,
            "families": self.family_tallies,
            "passed": self.passed,
            "wall_time_s": round(self.wall_time_s, 3),
            "records": self.records,
        }


def _template_summary(T):
    non_basis = T.non_basis
    block = [[T.entries[i][j - 1] for j in non_basis] for i in range(T.rows)]
    mask = [[x != 0 for x in row] for row in block]
    frame = sorted(compute_frame(mask)[1].positions) if non_basis else []
    return {
        "s_M": T.var_count,
        "pivot_basis": list(T.basis),
        "rows": T.to_rows(),
        "zero_positions": [[i + 1, j + 1] for i, j in T.zero_positions()
                           if (j + 1) not in T.basis],
        "frame_positions": [[i + 1, non_basis[k]] for i, k in frame],
    }


def _attempt(M: Matroid, basis, options: RunOptions):
    d, m = M.rank, M.ground_size
    T = fill_matrix(d, m, basis, M)
    try:
        S = generate_system(T, M)
    except ContradictionDetected as exc:
        v = Verdict(EMPTY, certificate={"contradiction": str(exc)},
                    trace=[{"step": "contradiction", "columns": list(exc.subset)}])
        return T, None, v
    if options.short_circuit and T.var_count == 0:
        v = Verdict(IRREDUCIBLE, "AffineSpace", {"point": True},
                    [{"step": "short-circuit", "reason": "s_M = 0"}])
        return T, S, v
    return T, S, classify_variety(S, saturate=options.saturate)


def analyze_matroid(M: Matroid, options: RunOptions | None = None, matroid_id=None) -> dict:
    """Per-matroid record; failures are captured as unclassified verdicts."""
    options = options or RunOptions()
    start = time.perf_counter()
    first = first_basis_revlex(M)
    record = {"matroid_id": matroid_id, "bases": [list(b) for b in M.bases],
              "first_basis": list(first)}
    try:
        pivots = [first]
        if options.pivot_fallback:
            pivots += [b for b in sorted(M.bases, key=revlex_key) if b != first]
        attempts = []
        for basis in pivots:
            T, S, v = _attempt(M, basis, options)
            attempts.append({"pivot_basis": list(basis), "verdict": v.label})
            if v.kind in (IRREDUCIBLE, EMPTY):
                break
        record["pivot_attempts"] = attempts
        record["template"] = _template_summary(T)
        record["n_eq"] = len(S.equalities) if S else None
        record["n_ineq"] = len(S.inequalities) if S else None
        record["eq_degrees"] = [p.degree() for p in S.equalities] if S else []
        record["ineq_degrees"] = [p.degree() for p in S.inequalities] if S else []
        record["system"] = S.to_json() if S else None
        record["verdict"] = v.to_json()
        witness = None
        if S is not None and v.kind == IRREDUCIBLE and options.witness_budget > 0:
            pt = find_rational_point(S, options.witness_height, options.witness_budget)
            witness = None if pt is None else [str(x) for x in pt]
        record["witness"] = witness
    except Exception as exc:  # a per-matroid failure must not abort the case
        record["verdict"] = Verdict(UNCLASSIFIED, certificate={"error": repr(exc)},
                                    trace=[{"step": "error"}]).to_json()
        record.setdefault("witness", None)
    record["ms"] = round(1000 * (time.perf_counter() - start), 3)
    return record


def analyze_system(label, S: PolySystem, options: RunOptions | None = None) -> dict:
    """Record for a bare system (used for fault injection and the CLI)."""
    options = options or RunOptions()
    start = time.perf_counter()
    v = classify_variety(S, saturate=options.saturate)
    return {"matroid_id": label, "injected": True, "system": S.to_json(),
            "n_eq": len(S.equalities), "n_ineq": len(S.inequalities),
            "verdict": v.to_json(), "witness": None,
            "ms": round(1000 * (time.perf_counter() - start), 3)}


def _worker(args):
    idx, bases, m, d, options = args
    M = Matroid(m, d, bases)
    return analyze_matroid(M, options, matroid_id=idx)


def run_case(d: int, m: int, catalog: Catalog | None = None,
             options: RunOptions | None = None) -> CaseReport:
    options = options or RunOptions()
    start = time.perf_counter()
    if catalog is None:
        catalog = enumerate_matroids(d, m)
    elif tuple(catalog.case) != (d, m):
        raise ValueError(f"catalog is for case {catalog.case}, not {(d, m)}")
    entries = sorted(catalog.entries, key=lambda M: M.bases)
    work = [(i + 1, M.bases, m, d, options) for i, M in enumerate(entries)]
    if options.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            records = list(pool.map(_worker, work, chunksize=max(1, len(work) // (4 * options.jobs))))
    else:
        records = [_worker(w) for w in work]
    records.sort(key=lambda r: r["matroid_id"])
    for k, (label, S) in enumerate(options.injected):
        records.append(analyze_system(f"injected-{k + 1}:{label}", S, options))
    return CaseReport((d, m), records, time.perf_counter() - start)


def run_all(options: RunOptions | None = None) -> tuple:
    """Run every case; returns ``(reports, passed)``."""
    options = options or RunOptions()
    reports = []
    for d, m in options.cases:
        opts = options
        if options.injected and reports:
            # inject once, into the first case only
            opts = RunOptions(**{**options.__dict__, "injected": []})
        reports.append(run_case(d, m, options=opts))
    return reports, all(r.passed for r in reports)


def summary_table(reports) -> str:
    head = f"{'case':>7} {'count':>6} {'irred':>6} {'empty':>6} {'reduc':>6} {'uncl':>6} {'time/s':>8}"
    lines = [head, "-" * len(head)]
    for r in reports:
        t = r.tallies
        lines.append(f"{str(tuple(r.case)):>7} {r.matroid_count:>6} {t[IRREDUCIBLE]:>6} "
                     f"{t[EMPTY]:>6} {t[REDUCIBLE]:>6} {t[UNCLASSIFIED]:>6} {r.wall_time_s:>8.2f}")
    passed = all(r.passed for r in reports)
    lines.append(f"global verdict: {'PASS' if passed else 'FAIL'}")
    return "\n".join(lines)


def mask_timings(obj):
    """Copy of a report structure with all timing fields set to None."""
    if isinstance(obj, dict):
        return {k: (None if k in TIMING_FIELDS else mask_timings(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [mask_timings(v) for v in obj]
    return obj


def report_json(report: CaseReport) -> str:
    return json.dumps(report.to_json(), indent=1, sort_keys=True)


def write_report(path, report: CaseReport) -> None:
    Path(path).write_text(report_json(report) + "\n", encoding="utf-8")


CSV_COLUMNS = ("case", "matroid_id", "s_M", "n_eq", "n_ineq", "verdict", "family",
               "witness_found", "ms")


def write_csv(path, reports) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for rep in reports:
            d, m = rep.case
            for r in rep.records:
                w.writerow([f"{d},{m}", r["matroid_id"],
                            r.get("template", {}).get("s_M", ""),
                            r.get("n_eq", ""), r.get("n_ineq", ""),
                            r["verdict"]["kind"], r["verdict"]["family"] or "",
                            int(r.get("witness") is not None), r["ms"]])


def validate_report(data: dict) -> list:
    """Internal consistency problems of a serialized case report."""
    problems = []
    if data.get("schema") != SCHEMA:
        problems.append("schema tag missing or wrong")
    recs = data["records"]
    if data["matroid_count"] != len(recs):
        problems.append("matroid_count does not match the number of records")
    counts = Counter(r["verdict"]["kind"] for r in recs)
    if {k: counts.get(k, 0) for k in VERDICT_KINDS} != data["tallies"]:
        problems.append("tallies do not match the records")
    if sum(data["tallies"].values()) != data["matroid_count"]:
        problems.append("tallies do not sum to matroid_count")
    for r in recs:
        if "trace" not in r["verdict"]:
            problems.append(f"record {r['matroid_id']} has no trace")
    return problems

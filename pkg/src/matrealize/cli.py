"""Command line interface: ``matrealize <command> ...``.

Exit status: 0 when every verdict is irreducible or empty, 1 when a reducible
or unclassified verdict is present, 2 on usage or I/O errors. Matrix positions
in JSON output count from 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import EMPTY, IRREDUCIBLE, classify_variety
from .enumeration import dumps_catalog, enumerate_matroids, read_catalog, write_catalog
from .errors import MatrealizeError
from .frame import compute_frame, deletable_line, format_rational, parse_matrix, scale_to_frame
from .pipeline import CASES, RunOptions, run_all, run_case, summary_table, write_csv, write_report
from .realize import PolySystem, check_reduced, reduce_realization


def _case(text):
    try:
        d, m = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected D,M but got {text!r}") from None
    return d, m


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _dump(obj):
    json.dump(obj, sys.stdout, indent=1)
    sys.stdout.write("\n")


def cmd_enumerate(args):
    cat = enumerate_matroids(args.rank, args.elements, allow_large=args.allow_large, jobs=args.jobs)
    if args.out:
        write_catalog(args.out, cat)
        print(f"wrote {len(cat)} matroids of rank {args.rank} on {args.elements} elements to {args.out}",
              file=sys.stderr)
    else:
        sys.stdout.write(dumps_catalog(cat))
    return 0


def _options(args, **extra):
    return RunOptions(jobs=args.jobs, witness_budget=args.witness_budget, **extra)


def cmd_analyze(args):
    d, m = args.case
    catalog = read_catalog(args.catalog) if args.catalog else None
    report = run_case(d, m, catalog, _options(args))
    if args.report:
        write_report(args.report, report)
    if args.csv:
        write_csv(args.csv, [report])
    print(summary_table([report]))
    return 0 if report.passed else 1


def cmd_run_all(args):
    cases = tuple(c for c in CASES if c[1] <= args.max_elements)
    reports, passed = run_all(_options(args, cases=cases))
    table = summary_table(reports)
    if args.report:
        out = Path(args.report)
        out.mkdir(parents=True, exist_ok=True)
        for r in reports:
            d, m = r.case
            write_report(out / f"case_{d}_{m}.json", r)
        write_csv(out / "summary.csv", reports)
        (out / "summary.txt").write_text(table + "\n", encoding="utf-8")
    print(table)
    return 0 if passed else 1


def cmd_frame(args):
    Q = parse_matrix(_load_json(args.matrix))
    board, frame = compute_frame(Q)
    out = {"frame": [[i + 1, j + 1] for i, j in frame],
           "board": str(board).splitlines()}
    mask_ok = Q and any(any(r) for r in Q) and all(any(r) for r in Q) and all(any(c) for c in zip(*Q))
    if mask_ok:
        kind, k = deletable_line(Q)
        out["deletable_line"] = [kind, k + 1]
    d1, d2 = scale_to_frame(Q)
    out["row_scaling"] = [format_rational(x) for x in d1]
    out["column_scaling"] = [format_rational(x) for x in d2]
    _dump(out)
    return 0


def cmd_normalize(args):
    A = parse_matrix(_load_json(args.matrix))
    res = reduce_realization(A)
    fmt = lambda X: [[format_rational(x) for x in row] for row in X]
    problems = check_reduced(res.normalized, res.matroid, res.basis)
    _dump({"basis": list(res.basis), "G": fmt(res.G),
           "D": [format_rational(x) for x in res.D],
           "normalized": fmt(res.normalized), "problems": problems})
    return 0 if not problems else 1


def cmd_classify(args):
    S = PolySystem.from_json(_load_json(args.system))
    v = classify_variety(S, saturate=not args.equalities_only)
    _dump(v.to_json())
    return 0 if v.kind in (IRREDUCIBLE, EMPTY) else 1


def build_parser():
    p = argparse.ArgumentParser(prog="matrealize", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="enumerate matroids up to isomorphism")
    e.add_argument("--rank", type=int, required=True)
    e.add_argument("--elements", type=int, required=True)
    e.add_argument("--out")
    e.add_argument("--allow-large", action="store_true", help="permit more than 7 elements")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    a = sub.add_parser("analyze", help="test one (rank, size) case")
    a.add_argument("--case", type=_case, required=True, metavar="D,M")
    a.add_argument("--catalog")
    a.add_argument("--report")
    a.add_argument("--csv")
    a.add_argument("--witness-budget", type=int, default=RunOptions.witness_budget)
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("run-all", help="test all ten cases")
    r.add_argument("--report", metavar="DIR")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--witness-budget", type=int, default=RunOptions.witness_budget)
    r.add_argument("--max-elements", type=int, default=7)
    r.set_defaults(func=cmd_run_all)

    f = sub.add_parser("frame", help="normal frame of a matrix")
    f.add_argument("--matrix", required=True)
    f.set_defaults(func=cmd_frame)

    n = sub.add_parser("normalize", help="reduce a realization matrix")
    n.add_argument("--matrix", required=True)
    n.set_defaults(func=cmd_normalize)

    c = sub.add_parser("classify", help="classify a polynomial system")
    c.add_argument("--system", required=True)
    c.add_argument("--equalities-only", action="store_true",
                   help="do not use inequalities to discard factors")
    c.set_defaults(func=cmd_classify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, MatrealizeError) as exc:
        print(f"matrealize: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

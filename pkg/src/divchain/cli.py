"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 int64 overflow,
4 enclosure budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .enclosure import BudgetExceeded, NestedSumEngine, c_enclosure, c_estimate
from .reals import PrecisionContext, solve_rho
from .report import empirical_c_rows, f_residual_rows, scan_rows_flat
from .tables import (
    CountOverflowError,
    a_table,
    audit_paper_recurrences,
    b_table,
    f_table,
    g_table,
    max_order_scan,
    summatory,
)
from .verify import TableSet, run_suite

EXIT_VERIFY, EXIT_USAGE, EXIT_OVERFLOW, EXIT_BUDGET = 1, 2, 3, 4

DEFAULTS = {"limit": 10**6, "f_limit": 10**5, "k": 5, "eps": 1e-4, "digits": 40}
FORMATS = {
    "constants": ("json",),
    "tables": ("csv",),
    "verify": ("json", "text"),
    "audit": ("json", "text"),
    "bounds": ("json",),
    "estimate": ("json",),
    "empirical-c": ("csv",),
    "max-orders": ("csv",),
    "f-residual": ("csv",),
}


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    # accept 1e6-style limits
    value = float(text) if any(c in text for c in "eE.") else int(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit", type=_int, help="table limit N (default 10^6; audit 300)")
    common.add_argument("--f-limit", type=_int, help="limit for the f table (default 10^5)")
    common.add_argument("--k", type=int, help="largest tuple length k (default 5)")
    common.add_argument("--eps", type=float, help="truncation budget per nested sum (default 1e-4)")
    common.add_argument("--digits", type=int, help="working precision in decimal digits (default 40)")
    common.add_argument("--out", type=Path, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json", "text"), help="output format")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="parallelism cap")
    common.add_argument("--exact", action="store_true", help="big-integer mode for g/b/a tables")

    parser = argparse.ArgumentParser(prog="divchain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "constants": "rho, zeta'(rho) and K = -1/(rho zeta'(rho)) as JSON",
        "tables": "CSV of n,g,b,a,f and x,G,B,A",
        "verify": "run the invariant suite",
        "audit": "check the literal b base case and a-recurrence against enumeration",
        "bounds": "certified enclosures of c for k = 1..K",
        "estimate": "shift-0 approximants 2K * S_k(0)",
        "empirical-c": "CSV of A(x)/x^rho and 2B(x)/x^rho per decade",
        "max-orders": "per-decade extremes of b, a (scaled by n^(rho-1)) and g/n^rho champions",
        "f-residual": "CSV of log f(n) minus its explicit main terms",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    for key, value in DEFAULTS.items():
        if getattr(args, key) is None:
            setattr(args, key, 300 if (key == "limit" and args.command == "audit") else value)
    allowed = FORMATS[args.command]
    if args.format is None:
        args.format = allowed[0]
    elif args.format not in allowed:
        raise UsageError(f"{args.command} supports --format {'/'.join(allowed)}")
    if args.limit < 2 or args.f_limit < 1:
        raise UsageError("--limit must be >= 2 and --f-limit >= 1")
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.digits < 20:
        raise UsageError("--digits must be >= 20")
    if not args.eps >= 1e-12:
        raise UsageError("--eps must be >= 1e-12")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    return args


def _emit(args, text: str, suffix: str = "") -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    path = args.out if not suffix else args.out.with_name(f"{args.out.stem}{suffix}{args.out.suffix}")
    path.write_text(text, encoding="utf-8", newline="\n")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in row])
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _constants(args):
    return solve_rho(PrecisionContext(args.digits))


def cmd_constants(args) -> int:
    _emit(args, _json(_constants(args).as_json()))
    return 0


def cmd_tables(args) -> int:
    N = args.limit
    b = b_table(N, args.exact)
    g, a = g_table(N, args.exact), a_table(N, args.exact, b=b)
    f = f_table(min(args.f_limit, N))
    rows = ((n, g.values[n], b.values[n], a.values[n], f.values[n] if n <= f.limit else None) for n in range(1, N + 1))
    G, B, A = summatory(g).cumulative, summatory(b).cumulative, summatory(a).cumulative
    cum = ((x, G[x], B[x], A[x]) for x in range(1, N + 1))
    values_csv = _csv(("n", "g", "b", "a", "f"), rows)
    cum_csv = _csv(("x", "G", "B", "A"), cum)
    if args.out is None:
        _emit(args, values_csv + "\n" + cum_csv)
    else:
        _emit(args, values_csv)
        _emit(args, cum_csv, suffix="_summatory")
    return 0


def cmd_verify(args) -> int:
    consts = _constants(args)
    tables = TableSet.build(args.limit, args.f_limit)
    results = run_suite(tables, consts)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        doc = [{"name": r.name, "passed": r.passed, "detail": r.detail, "counterexample": r.counterexample}
               for r in results]
        _emit(args, _json(doc))
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name:<20} {r.detail}" for r in results]
        _emit(args, "\n".join(lines) + "\n")
    for r in results:
        print(f"  {r.name:<20} {r.seconds:7.2f}s", file=sys.stderr)
    if failed:
        first = failed[0]
        print(f"verification failed: {first.name}: {first.detail}", file=sys.stderr)
        return EXIT_VERIFY
    return 0


def cmd_audit(args) -> int:
    records = audit_paper_recurrences(args.limit)
    summary = {}
    for rule in ("b-base", "a-recurrence", "b-corrected", "a-corrected"):
        hits = [r for r in records if r.rule == rule]
        summary[rule] = {
            "discrepancies": len(hits),
            "first": None if not hits else {"n": hits[0].n, "claimed": hits[0].claimed, "actual": hits[0].actual},
        }
    if args.format == "json":
        _emit(args, _json({"limit": args.limit, "rules": summary, "records": [r.__dict__ for r in records]}))
    else:
        lines = []
        for rule, s in summary.items():
            first = s["first"]
            where = "" if first is None else f"; first at n={first['n']}: recurrence {first['claimed']} vs enumeration {first['actual']}"
            lines.append(f"{rule:<14} {s['discrepancies']} discrepancies for n <= {args.limit}{where}")
        _emit(args, "\n".join(lines) + "\n")
    corrected = summary["b-corrected"]["discrepancies"] + summary["a-corrected"]["discrepancies"]
    return EXIT_VERIFY if corrected else 0


def _bounds_doc(args, with_estimates: bool) -> dict:
    consts = _constants(args)
    engine = NestedSumEngine(consts, args.eps, args.k)

    def block(k):
        res = c_enclosure(k, args.eps, consts, engine)
        doc = res.as_json()
        if with_estimates:
            doc["estimate"] = c_estimate(k, args.eps, consts, engine).as_json()
        return res, doc

    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        pairs = list(pool.map(block, range(1, args.k + 1)))
    results = [p[0] for p in pairs]
    lo = max(r.c_lo for r in results)
    hi = min(r.c_hi for r in results)
    return {
        "rho": consts.as_json()["rho"],
        "eps": repr(args.eps),
        "blocks": [p[1] for p in pairs],
        "combined": {"c_lo": repr(lo), "c_hi": repr(hi), "width": repr(hi - lo)},
    }


def cmd_bounds(args) -> int:
    _emit(args, _json(_bounds_doc(args, with_estimates=True)))
    return 0


def cmd_estimate(args) -> int:
    consts = _constants(args)
    engine = NestedSumEngine(consts, args.eps, args.k)
    rows = []
    for k in range(1, args.k + 1):
        est = c_estimate(k, args.eps, consts, engine)
        enc = c_enclosure(k, args.eps, consts, engine)
        rows.append({"k": k, "estimate": est.as_json(), "c_lo": repr(enc.c_lo), "c_hi": repr(enc.c_hi)})
    _emit(args, _json({"note": "shift-0 approximants; not enclosures of c", "eps": repr(args.eps), "rows": rows}))
    return 0


def cmd_empirical_c(args) -> int:
    consts = _constants(args)
    a = a_table(args.limit, args.exact)
    b = b_table(args.limit, args.exact)
    rows = empirical_c_rows(summatory(a), summatory(b), consts)
    _emit(args, _csv(("x", "A(x)/x^rho", "2B(x)/x^rho"), rows))
    enc = c_enclosure(args.k, args.eps, consts)
    print(f"certified enclosure (k={args.k}): c in [{enc.c_lo!r}, {enc.c_hi!r}]", file=sys.stderr)
    return 0


def cmd_max_orders(args) -> int:
    consts = _constants(args)
    b = b_table(args.limit, args.exact)
    scan = max_order_scan(g_table(args.limit, args.exact), b, a_table(args.limit, args.exact, b=b), consts)
    header = ("from", "to", "b_min", "b_max", "a_min", "a_max", "g_max", "g_argmax",
              "g_new_champions", "g_champion_n", "g_champion_ratio")
    _emit(args, _csv(header, scan_rows_flat(scan)))
    return 0


def cmd_f_residual(args) -> int:
    f = f_table(args.f_limit)
    _emit(args, _csv(("n", "t", "R"), f_residual_rows(f)))
    return 0


COMMANDS = {
    "constants": cmd_constants,
    "tables": cmd_tables,
    "verify": cmd_verify,
    "audit": cmd_audit,
    "bounds": cmd_bounds,
    "estimate": cmd_estimate,
    "empirical-c": cmd_empirical_c,
    "max-orders": cmd_max_orders,
    "f-residual": cmd_f_residual,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _resolve(args)
        t0 = time.perf_counter()
        code = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except CountOverflowError as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except BudgetExceeded as exc:
        achieved = "n/a" if exc.achieved != exc.achieved else f"{exc.achieved:.3e}"
        print(f"budget exceeded: {exc} (achieved width {achieved})", file=sys.stderr)
        return EXIT_BUDGET
    print(f"[{args.command}] done in {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver.

Exit codes: 0 success, 1 validation or precondition error, 2 internal
consistency failure, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .characteristic import ConsistencyError, ConventionError, compute_report, convert_convention
from .data import FIXTURES, MatrixParseError, UnknownFixtureError, format_matrix, load_matrix
from .exact_math import RankError
from .gale import GaleError, GaleSystem, a_from_gale_dual, gale_dual_from_A
from .oracle import OracleError, benchmark, compare_reports, full_pipeline_A, speedups
from .report import dumps, render_table, report_document

EXIT_OK, EXIT_INVALID, EXIT_CONSISTENCY, EXIT_PARSE = 0, 1, 2, 3


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("TORICPOLAR_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _system(args) -> tuple[GaleSystem, object]:
    M, _ = load_matrix(args.input)
    g = a_from_gale_dual(M) if args.role == "B" else gale_dual_from_A(M)
    return g, M


def cmd_gale(args) -> int:
    M, _ = load_matrix(args.input)
    if args.role == "B":
        g = a_from_gale_dual(M)
        print("# A")
        print(format_matrix(g.A))
    else:
        g = gale_dual_from_A(M)
        print("# B")
        print(format_matrix(g.B))
    print(f"# [Z^{g.n - 2} : Z A] = {g.index_ZA}")
    print("# diagnostics: none")
    return EXIT_OK


def cmd_invariants(args) -> int:
    g, M = _system(args)
    report = compute_report(g, threads=_threads(args))
    if args.convention == "alternate":
        report = convert_convention(report, g)
    if args.format == "json":
        sys.stdout.write(dumps(report_document(report, M, args.role)))
    else:
        sys.stdout.write(render_table(report))
    return EXIT_OK


def cmd_check(args) -> int:
    g, _ = _system(args)
    fast = compute_report(g, threads=_threads(args))
    slow = full_pipeline_A(g.A)
    diff = compare_reports(fast, slow)
    if diff:
        print(f"FAIL: {diff}")
        return EXIT_CONSISTENCY
    print(f"PASS: {len(fast.records)} faces, {len(fast.pairs)} face pairs, ED degree {fast.ed_degree}")
    return EXIT_OK


def cmd_bench(args) -> int:
    names = [s for s in args.fixtures.split(",") if s] if args.fixtures is not None else list(FIXTURES[2:])
    mats = {}
    for name in names:
        mats[name], _ = load_matrix(name)
    records = benchmark(mats, reps=args.reps, threads=_threads(args))
    ratio = speedups(records)
    hashes = {(r.fixture, r.method): r.result_hash for r in records}
    mismatched = [f for f in names if hashes.get((f, "A")) not in (None, hashes[f, "B"])]
    if args.format == "json":
        rows = [
            {
                "fixture": r.fixture,
                "n": str(r.n),
                "method": r.method,
                "seconds": r.seconds,
                "result_hash": r.result_hash,
                "note": r.note,
            }
            for r in records
        ]
        sys.stdout.write(json.dumps({"records": rows, "speedup": ratio}, sort_keys=True, indent=2) + "\n")
        return EXIT_CONSISTENCY if mismatched else EXIT_OK
    by = {(r.fixture, r.method): r for r in records}
    fmt = "{:<16} {:>3} {:>10} {:>10} {:>10} {:>9}  {}"
    print(fmt.format("fixture", "n", "faces_s", "B_s", "A_s", "speedup", "hash"))
    sec = lambda r: "-" if r is None or r.seconds is None else f"{r.seconds:.4f}"  # noqa: E731
    for name in names:
        b = by[name, "B"]
        sp = f"{ratio[name]:.1f}x" if name in ratio else "-"
        print(fmt.format(name, b.n, sec(by[name, "faces"]), sec(b), sec(by.get((name, "A"))), sp, b.result_hash))
        if by[name, "A"].note:
            print(f"  A method {by[name, 'A'].note}")
    for name in mismatched:
        print(f"  result hash mismatch between methods on {name}", file=sys.stderr)
    return EXIT_CONSISTENCY if mismatched else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="toricpolar",
        description="Polar degrees, Euler obstructions and ED degrees of codimension-two toric varieties.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("input", help="matrix file or bundled fixture name (" + ", ".join(FIXTURES) + ")")
            sp.add_argument("--from", dest="role", choices=("A", "B"), default="A", help="role of the input matrix")
        sp.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")

    sp = sub.add_parser("gale", help="print the Gale dual of the input")
    common(sp)
    sp.set_defaults(func=cmd_gale)

    sp = sub.add_parser("invariants", help="full invariant report from the two-column Gale dual")
    common(sp)
    sp.add_argument("--convention", choices=("main", "alternate"), default="main")
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("check", help="compare against the slow A-matrix oracle")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("bench", help="time face enumeration, the B method and the A method")
    common(sp, with_input=False)
    sp.add_argument("--fixtures", default=None, help="comma-separated fixture names (default: A1..A6)")
    sp.add_argument("--reps", type=int, default=1)
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except GaleError as e:
        print("invalid input:", file=sys.stderr)
        for d in e.diagnostics:
            print(f"  {d}", file=sys.stderr)
        return EXIT_INVALID
    except (ConventionError, OracleError, UnknownFixtureError, FileNotFoundError, RankError, ValueError) as e:
        msg = e.args[0] if isinstance(e, LookupError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except (ConsistencyError, AssertionError) as e:
        print(f"consistency failure: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())

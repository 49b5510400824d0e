"""Command-line entry point.

Exit codes: 0 success/PASS, 1 a verification produced a counterexample,
2 usage or input-format error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from degdev import chemical, enumeration, families
from degdev.ascent import AscentError, ascend
from degdev.formats import format_edge_list, format_fraction, read_graph
from degdev.graph import GraphError, deviation, is_connected, scaled_deviation
from degdev.measures import (
    ConvergenceError,
    albertson_irregularity,
    nikiforov_bounds,
    total_irregularity,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(x: Fraction) -> str:
    return f"{format_fraction(x)} ({float(x):.6f})"


def _read(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return read_graph(text)


def cmd_measure(args) -> int:
    g = _read(args.file)
    if g.n < 1:
        raise UsageError("graph has no vertices")
    print(f"n = {g.n}")
    print(f"m = {g.m}")
    print(f"s = {_rational(deviation(g))}")
    print(f"n*s = {scaled_deviation(g)}")
    print(f"irr = {albertson_irregularity(g)}")
    print(f"irr_t = {total_irregularity(g)}")
    if not is_connected(g) or g.m == 0:
        print("mu = n/a (needs a connected graph with an edge)")
        return EXIT_OK
    rep = nikiforov_bounds(g, tolerance=args.tolerance)
    print(f"mu = {rep.mu:.9f}")
    print(f"spectral lower = {rep.lower:.9f}")
    print(f"spectral gap = {rep.gap:.9f}")
    print(f"spectral upper = {rep.upper:.9f}")
    print(f"spectral holds = {'true' if rep.holds else 'false'}")
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_family(args) -> int:
    if args.name == "cs":
        g = families.complete_split(args.n, args.k)
        closed = families.s_complete_split(args.n, args.k)
    else:
        pattern = families.CONCENTRATED if args.attachment == "concentrated" else families.BALANCED
        g = families.pendant_split(args.n, args.k, pattern)
        closed = None
        if args.attachment == "balanced" and families.balanced_is_valid(args.n, args.k):
            closed = families.s_pendant_split(args.n, args.k)
    sys.stdout.write(format_edge_list(g))
    direct = deviation(g)
    if closed is None:
        print(f"# s = {format_fraction(direct)} (direct; no closed form for this attachment)")
        return EXIT_OK
    if closed != direct:
        print(f"# s = {format_fraction(closed)} (closed form), MISMATCH: direct {format_fraction(direct)}")
        return EXIT_FAIL
    print(f"# s = {format_fraction(closed)} (closed form), verified")
    return EXIT_OK


def cmd_ascend(args) -> int:
    g = _read(args.file)
    try:
        tr = ascend(g)
    except AscentError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        sys.stderr.write(format_edge_list(exc.graph))
        return EXIT_FAIL
    if args.trace:
        Path(args.trace).write_text(tr.to_csv())
    fam = tr.terminal_family
    print(f"steps = {len(tr.steps)}")
    print(f"terminal = {fam.kind} k={fam.k}")
    print(f"s start = {_rational(deviation(g))}")
    print(f"s terminal = {_rational(deviation(tr.terminal))}")
    return EXIT_OK


def _conjecture_range(args) -> list[int]:
    for n in args.n:
        if n < 3:
            raise UsageError(f"--n must be >= 3, got {n}")
        if n >= 8 and not args.extended:
            raise UsageError(f"n={n} needs --extended")
        if n > enumeration.EXPERIMENTAL_N:
            raise UsageError(f"n={n} is beyond the supported maximum {enumeration.EXPERIMENTAL_N}")
    return args.n


def cmd_verify_conjecture(args) -> int:
    ns = _conjecture_range(args)
    if args.expect is not None and len(ns) != 1:
        raise UsageError("--expect needs a single --n")
    reports, status = [], EXIT_OK
    for n in ns:
        t0 = time.time()
        res = enumeration.verify_conjecture(
            n, threads=args.threads, experimental=n > enumeration.MAX_N,
            checkpoint=Path(args.checkpoint) if args.checkpoint else None,
            expected_override=args.expect,
        )
        dt = time.time() - t0
        if isinstance(res, enumeration.VerificationFailure):
            print(f"n={n}: FAIL ({dt:.1f}s)")
            sys.stderr.write(res.describe())
            reports.append(res.report)
            status = EXIT_FAIL
        else:
            reports.append(res)
            print(f"n={n}: PASS max n*s={res.max_scaled_deviation} "
                  f"(s={format_fraction(Fraction(res.max_scaled_deviation, n))}) "
                  f"witnesses={res.labeled_witness_count} labeled / {len(res.witnesses_up_to_iso)} classes "
                  f"({dt:.1f}s)")
        if args.spectral and n <= enumeration.MAX_N:
            bounds = enumeration.verify_spectral_bounds(n)
            if isinstance(bounds, enumeration.VerificationFailure):
                print(f"n={n}: spectral FAIL")
                sys.stderr.write(bounds.describe())
                status = EXIT_FAIL
            else:
                print(f"n={n}: spectral PASS over {bounds.graphs} graphs, max irr={bounds.max_albertson}")
    Path(args.report).write_text(enumeration.report_csv(reports))
    print("PASS" if status == EXIT_OK else "FAIL")
    return status


def cmd_verify_ascent(args) -> int:
    samples = args.samples
    if not 3 <= args.n <= 7:
        raise UsageError("--n must be in 3..7")
    if args.n == 7 and samples is None:
        samples = 100_000
    res = enumeration.verify_ascent(args.n, samples=samples, seed=args.seed)
    if isinstance(res, enumeration.VerificationFailure):
        print("FAIL")
        sys.stderr.write(res.describe())
        return EXIT_FAIL
    fams = ", ".join(f"{k}={v}" for k, v in sorted(res.terminal_counts.items()))
    acts = ", ".join(f"{k}={v}" for k, v in sorted(res.action_counts.items()))
    print(f"graphs = {res.graphs}")
    print(f"max trace length = {res.max_trace_length}")
    print(f"terminals: {fams}")
    print(f"actions: {acts}")
    print("PASS")
    return EXIT_OK


def cmd_verify_chemical(args) -> int:
    if args.n_min > args.n_max or args.c_min > args.c_max or args.samples < 0:
        raise UsageError("empty or negative ranges")
    rep = chemical.verify_chemical(
        args.n_min, args.n_max, args.c_min, args.c_max, args.samples, args.seed,
        exhaustive_n=args.exhaustive_n, tree_n=args.tree_n,
    )
    if rep.failure:
        print("FAIL")
        print(rep.failure, file=sys.stderr)
        if rep.witness is not None:
            sys.stderr.write(format_edge_list(rep.witness))
        return EXIT_FAIL
    print(f"exhaustive graphs = {rep.exhaustive_graphs}")
    print(f"sampled graphs = {rep.sampled_graphs}")
    print(f"labeled chemical trees = {rep.trees_checked}")
    print(f"c>=2 branches: n>2c-2 {rep.low_branch}, n<=2c-2 {rep.high_branch}")
    print("PASS")
    return EXIT_OK


def cmd_verify_forms(args) -> int:
    rows = enumeration.verify_closed_forms(args.closed_n_max, args.n_max)
    Path(args.out).write_text(families.discrepancy_csv(rows))
    differ = sum(not r.agrees for r in rows)
    print(f"{len(rows)} rows, {differ} disagree with the printed formulas -> {args.out}")
    ok = all(
        families.compare_family_maxima(n).difference > 0 for n in range(4, args.n_max + 1)
    )
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_optimal_k(args) -> int:
    n = args.n
    if args.family == "cs":
        if n < 3:
            raise UsageError("--n must be >= 3")
        got, printed = families.optimal_k_complete_split(n), families.printed_optimal_k_complete_split(n)
    else:
        if n < 4:
            raise UsageError("--n must be >= 4")
        got, printed = families.optimal_k_pendant_split(n), families.printed_optimal_k_pendant_split(n)
    print("k = " + " ".join(map(str, got)))
    if tuple(got) != tuple(printed):
        print("published table gives k = " + " ".join(map(str, printed)) + " (disagrees)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degdev", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("measure", help="irregularity measures of a graph file")
    sp.add_argument("file", help="edge-list or graph6 file, '-' for stdin")
    sp.add_argument("--tolerance", type=float, default=1e-6)
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("family", help="emit a split-family graph")
    sp.add_argument("name", choices=["cs", "s1"])
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("attachment", nargs="?", default="balanced", choices=["balanced", "concentrated"])
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("ascend", help="run the monotone rewriting on a graph file")
    sp.add_argument("file")
    sp.add_argument("--trace", help="write the trace CSV here")
    sp.set_defaults(func=cmd_ascend)

    sp = sub.add_parser("verify-conjecture", help="exhaustive maximum of s over connected graphs")
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--extended", action="store_true", help="allow n >= 8")
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--report", default="conjecture_report.csv")
    sp.add_argument("--checkpoint", help="resumable state file for long sweeps")
    sp.add_argument("--spectral", action="store_true", help="also check the spectral sandwich and Albertson cap")
    sp.add_argument("--expect", type=int, help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify_conjecture)

    sp = sub.add_parser("verify-ascent", help="ascend every connected graph on n vertices")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, help="random masks instead of exhaustive (default 100000 at n=7)")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify_ascent)

    sp = sub.add_parser("verify-chemical", help="oracle-check the chemical graph formulas")
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--c-min", type=int, default=0)
    sp.add_argument("--c-max", type=int, default=21)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--exhaustive-n", type=int, default=7)
    sp.add_argument("--tree-n", type=int, default=9)
    sp.set_defaults(func=cmd_verify_chemical)

    sp = sub.add_parser("verify-forms", help="closed-form discrepancy report")
    sp.add_argument("--out", required=True)
    sp.add_argument("--n-max", type=int, default=30)
    sp.add_argument("--closed-n-max", type=int, default=12)
    sp.set_defaults(func=cmd_verify_forms)

    sp = sub.add_parser("optimal-k", help="maximising clique sizes for a family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--family", choices=["cs", "s1"], required=True)
    sp.set_defaults(func=cmd_optimal_k)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, GraphError, OSError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

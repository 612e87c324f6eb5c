"""Command-line front end.

Subcommands:

  bounds    exponent-base table for (alpha, c) pairs, on stdout or as CSV
  solve     run the randomized or deterministic approximate search on an
            instance file
  brute     covering-driven approximate search (no extension oracle)
  families  build and print a set-intersection family or covering
  verify    run the built-in invariant suites
  bench     seeded success-rate experiment presets

Exit codes: 0 success, 1 usage error, 2 runtime error (bad input file,
construction limit exceeded, failed verification).  stdout carries data;
diagnostics go to stderr.  Vertices in instance files and in the printed
solutions are 1-based (DIMACS convention); JSON reports keep the engine's
0-based internal ids.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .bounds import CSV_HEADER, bound_table, format_csv_rows
from .engine import RunConfig, brute_force_search, solve, success_rate
from .families import (
    LimitExceededError,
    build_covering,
    build_intersection_family,
    family_to_text,
    verify_family,
)
from .problems import (
    ParseError,
    gen_gnp,
    hs3_exact_oracle,
    hs3_system,
    parse_graph,
    parse_hypergraph,
    vc_exact_oracle,
    vc_matching_oracle,
    vc_system,
)
from .verification import SUITES, run_suites

PRESETS = {
    "vc-1.1": ([1.1], [1.1652]),  # 1.1-approximate vertex cover extension base
    "dfvs-2": ([2.0], [1024.0]),  # 2-approximate directed feedback vertex set base
}

BENCH_PRESETS = ("small-vc",)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="amls", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser(
        "bounds",
        help="exponent bases for (alpha, c) pairs",
        description="Print one row per (alpha, c) pair of the cartesian "
        "product: the local-search base plus the brute/naive/emls benchmarks.",
    )
    p.add_argument("--alpha", type=_float_list, help="comma-separated ratios, each >= 1")
    p.add_argument("--c", type=_float_list, help="comma-separated oracle bases, each >= 1")
    p.add_argument("--preset", choices=sorted(PRESETS), help="a known (alpha, c) pair")
    p.add_argument("--tol", type=float, default=1e-12, help="bisection tolerance")
    p.add_argument("--csv", metavar="PATH", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("solve", help="approximate search on an instance file")
    p.add_argument("--problem", choices=("vc", "hs3"), required=True)
    p.add_argument("--input", required=True, metavar="FILE", help="instance path, '-' for stdin")
    p.add_argument("--oracle", choices=("exact", "matching"), default="exact")
    p.add_argument("--alpha", type=float, help="target ratio (>= the oracle's own ratio)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--boost", type=float, default=3.0, help="repetition multiplier")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--deterministic", action="store_true", help="family-driven mode")
    p.add_argument("--stop-at-first", action="store_true", help="return at the first qualifying k")
    p.add_argument("--max-repetitions", type=int, help="cap repetitions per k (degrades the guarantee)")
    p.add_argument("--family-limit", type=int, default=14)
    p.add_argument("--json", metavar="PATH", help="write the JSON report here, '-' for stdout")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("brute", help="covering-driven search, no oracle")
    p.add_argument("--problem", choices=("vc", "hs3"), required=True)
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--limit", type=int, default=14)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=_cmd_brute)

    p = sub.add_parser("families", help="build a set-intersection family or covering")
    p.add_argument("--kind", choices=("intersection", "covering"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, help="target subset size (intersection)")
    p.add_argument("--q", type=int, help="member size (intersection)")
    p.add_argument("--r", type=int, help="required overlap (intersection)")
    p.add_argument("--strong", action="store_true", help="require overlap exactly r")
    p.add_argument("--t", type=int, help="member size (covering)")
    p.add_argument("--k", type=int, help="covered subset size (covering)")
    p.add_argument("--limit", type=int, default=14)
    p.add_argument("--out", metavar="PATH", help="write here instead of stdout")
    p.set_defaults(func=_cmd_families)

    p = sub.add_parser("verify", help="run the built-in invariant suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="seeded success-rate experiments")
    p.add_argument("--preset", choices=BENCH_PRESETS, required=True)
    p.add_argument("--trials", type=int, default=300)
    p.add_argument("--boost", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graphs", type=int, default=10, help="instances to spread trials over")
    p.set_defaults(func=_cmd_bench)

    return parser


def _cmd_bounds(args) -> int:
    if args.preset is not None:
        if args.alpha is not None or args.c is not None:
            print("error: --preset conflicts with --alpha/--c", file=sys.stderr)
            return 1
        alphas, cs = PRESETS[args.preset]
    else:
        if args.alpha is None or args.c is None:
            print("error: need --alpha and --c (or --preset)", file=sys.stderr)
            return 1
        alphas, cs = args.alpha, args.c
    reports = bound_table(alphas, cs, tol=args.tol)
    lines = [CSV_HEADER] + format_csv_rows(reports)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))
    return 0


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_instance(args):
    text = _read_input(args.input)
    if args.problem == "vc":
        graph = parse_graph(text)
        inst = vc_system(graph)
        oracle = (
            vc_matching_oracle(graph)
            if getattr(args, "oracle", "exact") == "matching"
            else vc_exact_oracle(graph)
        )
    else:
        hyper = parse_hypergraph(text)
        inst = hs3_system(hyper)
        if getattr(args, "oracle", "exact") == "matching":
            raise ValueError("the matching oracle applies to vc only")
        oracle = hs3_exact_oracle(hyper)
    return inst, oracle


def _print_report(rep, json_path) -> None:
    print(f"size {rep.size}")
    print(" ".join(["solution", *(str(v + 1) for v in rep.solution)]))
    print(
        f"mode={rep.mode} k_found={rep.k_found} samples={rep.total_samples} "
        f"elapsed={rep.elapsed:.3f}s warnings={len(rep.warnings)}",
        file=sys.stderr,
    )
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if json_path == "-":
        print(rep.to_json())
    elif json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json() + "\n")


def _cmd_solve(args) -> int:
    inst, oracle = _load_instance(args)
    if args.alpha is not None:
        if args.alpha < oracle.alpha:
            print(
                f"error: --alpha {args.alpha} is below the oracle's ratio {oracle.alpha}",
                file=sys.stderr,
            )
            return 1
        oracle = replace(oracle, alpha=args.alpha)
    cfg = RunConfig(
        seed=args.seed,
        boost=args.boost,
        max_repetitions=args.max_repetitions,
        parallel_workers=args.workers,
        deterministic=args.deterministic,
        stop_at_first=args.stop_at_first,
        family_limit=args.family_limit,
    )
    rep = solve(inst, oracle, cfg)
    _print_report(rep, args.json)
    return 0


def _cmd_brute(args) -> int:
    inst, _ = _load_instance(args)
    rep = brute_force_search(inst, args.alpha, limit=args.limit)
    _print_report(rep, args.json)
    return 0


def _cmd_families(args) -> int:
    if args.kind == "intersection":
        missing = [f for f in ("p", "q", "r") if getattr(args, f) is None]
        if missing:
            print(f"error: intersection families need --{' --'.join(missing)}", file=sys.stderr)
            return 1
        family = build_intersection_family(
            args.n, args.p, args.q, args.r, strong=args.strong, limit=args.limit
        )
    else:
        if args.t is None or args.k is None:
            print("error: coverings need --t and --k", file=sys.stderr)
            return 1
        family = build_covering(args.n, args.t, args.k, limit=args.limit)
    text = family_to_text(family)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not verify_family(family):
        print("verification FAILED", file=sys.stderr)
        return 2
    print(f"verified: {len(family.members)} members", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    failures = 0
    for suite_name, checks in run_suites(args.suite):
        for name, ok, detail in checks:
            status = "ok" if ok else "FAIL"
            suffix = f" ({detail})" if detail else ""
            print(f"{status:4s} {suite_name}: {name}{suffix}")
            failures += 0 if ok else 1
    print(f"{'all checks passed' if failures == 0 else f'{failures} check(s) FAILED'}")
    return 0 if failures == 0 else 2


def _cmd_bench(args) -> int:
    if args.trials < 1 or args.graphs < 1:
        print("error: --trials and --graphs must be positive", file=sys.stderr)
        return 1
    total = 0
    hits = 0
    for g_index in range(args.graphs):
        trials = args.trials // args.graphs + (1 if g_index < args.trials % args.graphs else 0)
        if trials == 0:
            continue
        graph = gen_gnp(12, 0.3, seed=args.seed + 7919 * g_index)
        inst = vc_system(graph)
        cfg = RunConfig(seed=args.seed + 104729 * g_index, boost=args.boost)
        fraction = success_rate(inst, vc_exact_oracle(graph), trials, cfg)
        hits += round(fraction * trials)
        total += trials
        print(f"graph {g_index}: trials={trials} fraction={fraction:.3f}", file=sys.stderr)
    print(f"fraction {hits / total:.4f}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "func", None) is None:
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ParseError, LimitExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

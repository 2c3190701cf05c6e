"""Command-line front end.

Vertices on the command line are 1-based, like DIMACS.  Exit status: 0 for
a YES decision (or a successful non-decision command), 1 for NO, 2 for usage
or input errors, 3 when a size guard refuses the request.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import bench_scaling, consecutive_ratios, median_times, records_to_csv
from .belowguarantee import (
    solve_below_structural_guarantee,
    solve_dual_coloring,
    solve_dual_coloring_baseline,
)
from .errors import DimacsError, GuardError, ModulatorError
from .ffield import Rng
from .generators import gen_gnp, gen_planted_comodulator
from .graphcore import Graph, complement, parse_dimacs, to_dimacs
from .modsolve import (
    DEFAULT_REPEATS,
    ModulatorInstance,
    SolveReport,
    solve_clique_cover_with_modulator,
    solve_coloring_with_modulator,
)
from .oracle import (
    chromatic_number_exact,
    clique_cover_number_exact,
    max_independent_set_exact,
    maximum_matching_exact,
)
from .reducegen import ColoredCliqueInstance, build_reduction

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_dimacs(text)


def _vertex_list(text: str, n: int) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        vs = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None
    if any(not 1 <= v <= n for v in vs):
        raise UsageError(f"vertex list {text!r} out of range 1..{n}")
    return tuple(v - 1 for v in vs)


def _emit_report(rep: SolveReport, args: argparse.Namespace) -> int:
    if args.json:
        print(rep.to_json())
    else:
        print("YES" if rep.decision else "NO")
        extra = ", ".join(f"{k}={v}" for k, v in rep.to_dict().items()
                          if k not in ("decision", "witness") and v is not None)
        print(f"c {extra}")
    return EXIT_YES if rep.decision else EXIT_NO


def cmd_dual(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    solve = solve_dual_coloring_baseline if args.baseline else solve_dual_coloring
    return _emit_report(solve(g, args.k, Rng(args.seed), args.repeats), args)


def cmd_guarantee(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    rep = solve_below_structural_guarantee(g, args.k, Rng(args.seed), args.repeats,
                                           greedy_out=args.greedy_matching)
    return _emit_report(rep, args)


def cmd_modulator(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    s = _vertex_list(args.modulator, g.n)
    rng = Rng(args.seed)
    if args.side == "cover":
        rep = solve_clique_cover_with_modulator(ModulatorInstance(g, s, args.target), rng, args.repeats)
    else:
        rep = solve_coloring_with_modulator(g, s, args.target, rng, args.repeats)
    return _emit_report(rep, args)


_ORACLES = {
    "chromatic": chromatic_number_exact,
    "cover": clique_cover_number_exact,
    "mis": max_independent_set_exact,
    "matching": maximum_matching_exact,
}


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    value = _ORACLES[args.which](g)
    print(json.dumps({"oracle": args.which, "n": g.n, "value": value}) if args.json else value)
    return EXIT_YES


def cmd_reduce(args: argparse.Namespace) -> int:
    if args.edges is not None and args.random is not None:
        raise UsageError("--edges and --random are mutually exclusive")
    if args.edges is not None:
        inst = ColoredCliqueInstance.from_graph(args.k, args.n, _read_graph(args.edges))
    else:
        prob = 0.5 if args.random is None else args.random
        inst = ColoredCliqueInstance.random(args.k, args.n, prob, Rng(args.seed))
    r = build_reduction(inst)
    g = complement(r.graph) if args.complement else r.graph
    sidecar = r.sidecar()
    sidecar["side"] = "color" if args.complement else "cover"
    if args.out:
        out = Path(args.out)
        out.write_text(to_dimacs(g, [f"reduction k={args.k} n={args.n}"]))
        Path(str(out) + ".json").write_text(json.dumps(sidecar, indent=2) + "\n")
    else:
        sys.stdout.write(to_dimacs(g, [f"sidecar {json.dumps(sidecar)}"]))
    return EXIT_YES


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "gnp":
        g = gen_gnp(args.n, args.prob, args.seed)
        comments = [f"gnp n={args.n} prob={args.prob} seed={args.seed}"]
    else:
        g, s = gen_planted_comodulator(args.n, args.p_mod, args.seed)
        comments = [f"planted n={args.n} p_mod={args.p_mod} seed={args.seed}",
                    "modulator " + ",".join(str(v + 1) for v in s)]
    text = to_dimacs(g, comments)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_bench(args: argparse.Namespace) -> int:
    records = bench_scaling(range(args.p_min, args.p_max + 1), args.n, args.trials, args.seed,
                            repeats=args.repeats, timing_runs=args.timing_runs)
    csv_text = records_to_csv(records)
    if args.out:
        Path(args.out).write_text(csv_text)
    if args.json:
        print(json.dumps({"median_ms": median_times(records), "ratios": consecutive_ratios(records)}))
    elif not args.out:
        sys.stdout.write(csv_text)
    return EXIT_YES


def _common_flags(repeats: int = DEFAULT_REPEATS) -> argparse.ArgumentParser:
    # a fresh parent per subcommand: argparse shares parent actions, so a
    # per-subcommand default would otherwise leak into all of them
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="DIMACS graph file ('-' for stdin)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--repeats", type=int, default=repeats)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="belowcolor", description="Coloring below structural guarantees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual", parents=[_common_flags()], help="is the graph (n-k)-colorable?")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--baseline", action="store_true", help="use the matching-based pipeline")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("guarantee", parents=[_common_flags()], help="is the graph (omega+mu_bar-k)-colorable?")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--greedy-matching", action="store_true",
                   help="maximal instead of maximum matching for the large-packing cover")
    p.set_defaults(func=cmd_guarantee)

    p = sub.add_parser("modulator", parents=[_common_flags()], help="solve with a given modulator")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--modulator", default="", help="comma-separated 1-based vertices")
    p.add_argument("--side", choices=("cover", "color"), default="color")
    p.set_defaults(func=cmd_modulator)

    p = sub.add_parser("oracle", parents=[_common_flags()], help="exact reference values")
    p.add_argument("which", choices=sorted(_ORACLES))
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", parents=[_common_flags()], help="colored-clique reduction instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edges", help="DIMACS file of the k-partite input on k*n vertices")
    p.add_argument("--random", type=float, help="cross-edge probability for a random input")
    p.add_argument("--complement", action="store_true", help="emit the coloring-side graph")
    p.add_argument("--out", help="DIMACS output path; the sidecar goes to <out>.json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", parents=[_common_flags()], help="random instances")
    p.add_argument("kind", choices=("gnp", "planted"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prob", type=float, default=0.5)
    p.add_argument("--p-mod", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[_common_flags(repeats=1)], help="scaling in the modulator size")
    p.add_argument("--p-min", type=int, default=8)
    p.add_argument("--p-max", type=int, default=12)
    p.add_argument("--n", type=int, default=22)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--timing-runs", type=int, default=3)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (DimacsError, ModulatorError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

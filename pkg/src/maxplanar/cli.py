"""Command-line front end.

Exit codes: 0 on success, 1 for input/parse/validation problems, 2 when a
resource guard fires (vertex count out of range, budget exceeded, bounded
search exhausted). All output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .core import build_triangulation, face
from .errors import (
    BudgetExceeded,
    MaxplanarError,
    SearchExhausted,
    VertexCountOutOfRange,
)
from .moves import relocation_as_flips, transform, vertex_relocate
from .planarity import maximum_spanning_tree
from .solver import (
    counterexample_instance,
    count_triangulations,
    enumerate_triangulations,
    exact_mwpsp,
    local_search,
    mst_greedy,
)

_RESOURCE_ERRORS = (VertexCountOutOfRange, BudgetExceeded, SearchExhausted)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    parser.add_argument("--seed", type=int, default=0, help="random seed for heuristics")
    parser.add_argument("--budget", type=int, default=None, help="enumeration state limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxplanar",
        description="Maximal planar graph moves and maximum-weight planar subgraph solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="fully validate a triangulation file")
    p.add_argument("-g", "--graph", required=True)
    _add_common(p)

    p = sub.add_parser("mst", help="maximum spanning tree of an instance")
    p.add_argument("-i", "--instance", required=True)
    _add_common(p)

    p = sub.add_parser("solve", help="heuristic construction plus local improvement")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("--construct", choices=["mst-greedy"], default="mst-greedy")
    p.add_argument("--improve", choices=["none", "steepest", "first", "anneal"], default="steepest")
    p.add_argument("--report-dir", default=None, help="write figures and tables here")
    _add_common(p)

    p = sub.add_parser("exact", help="exhaustive optimum over all triangulations")
    p.add_argument("-i", "--instance", required=True)
    p.add_argument("--forced", default=None, help="file of 'u v' lines that solutions must contain")
    p.add_argument("--all-optima", action="store_true", help="print every optimum, not just one")
    p.add_argument("--report-dir", default=None, help="write figures and tables here")
    _add_common(p)

    p = sub.add_parser("flipseq", help="flips-only sequence from one triangulation to another")
    p.add_argument("-a", required=True, help="source triangulation file")
    p.add_argument("-b", required=True, help="target triangulation file")
    p.add_argument("--depth", type=int, default=3, help="degree-raising search depth (n > 8)")
    _add_common(p)

    p = sub.add_parser("relocate", help="relocate a degree-3 vertex into a face")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-u", type=int, required=True, help="degree-3 vertex")
    p.add_argument("-f", required=True, help="target face as a,b,c")
    p.add_argument("--compile", action="store_true", help="emit the equivalent flip sequence")
    _add_common(p)

    p = sub.add_parser("enumerate", help="every labeled triangulation on 1..n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    _add_common(p)

    p = sub.add_parser("counterexample", help="print the built-in 8-vertex instance")
    _add_common(p)

    p = sub.add_parser("export-dot", help="DOT text for offline rendering")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_common(p)

    return parser


def run_cli(argv: list[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _dispatch(args, out)
    except _RESOURCE_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (MaxplanarError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def _read(path: str) -> str:
    return Path(path).read_text()


def _dispatch(args: argparse.Namespace, out) -> int:
    if args.command == "validate":
        G = io.parse_triangulation(_read(args.graph))
        print(json.dumps({"valid": True, "n": G.n, "edges": G.m, "faces": G.f}), file=out)
        return 0

    if args.command == "mst":
        W = io.parse_instance(_read(args.instance))
        tree = maximum_spanning_tree(W)
        obj = {
            "n": tree.n,
            "edges": [list(e) for e in sorted(tree.edges)],
            "weight": io.format_weight(tree.total_weight(W)),
        }
        print(json.dumps(obj), file=out)
        return 0

    if args.command == "solve":
        W = io.parse_instance(_read(args.instance))
        start = mst_greedy(W)
        if args.improve == "none":
            from .moves import MoveSequence
            from .solver import SolveReport

            report = SolveReport(
                method="mst-greedy",
                best_weight=start.weight(W),
                best_graphs=(start,),
                explored=1,
                trace=MoveSequence(()),
            )
        else:
            policy = {"steepest": "steepest", "first": "first", "anneal": "anneal"}[args.improve]
            report = local_search(start, W, policy=policy, seed=args.seed)
        print(io.format_report(report), file=out)
        if args.report_dir:
            from .report import write_report_bundle

            write_report_bundle(report, W, args.report_dir, start=start)
        return 0

    if args.command == "exact":
        W = io.parse_instance(_read(args.instance))
        forced = frozenset()
        if args.forced:
            forced = io.parse_edge_list(_read(args.forced), W.n)
        report = exact_mwpsp(W, forced, workers=args.workers, budget=args.budget)
        print(io.format_report(report, max_graphs=None if args.all_optima else 1), file=out)
        if args.report_dir:
            from .report import write_report_bundle

            write_report_bundle(report, W, args.report_dir)
        return 0

    if args.command == "flipseq":
        A = io.parse_triangulation(_read(args.a))
        B = io.parse_triangulation(_read(args.b))
        seq = transform(A, B, depth=args.depth)
        print(io.format_moves(seq), file=out)
        return 0

    if args.command == "relocate":
        G = io.parse_triangulation(_read(args.graph))
        corners = [int(x) for x in args.f.split(",")]
        if len(corners) != 3:
            raise MaxplanarError(f"face must be three ids, got {args.f!r}")
        target = face(*corners)
        if args.compile:
            seq = relocation_as_flips(G, args.u, target)
            print(io.format_moves(seq), file=out)
        else:
            H = vertex_relocate(G, args.u, target)
            print(io.format_triangulation(H), file=out)
        return 0

    if args.command == "enumerate":
        if args.count_only:
            print(count_triangulations(args.n, budget=args.budget), file=out)
        else:
            for G in enumerate_triangulations(args.n, budget=args.budget):
                print(io.format_triangulation(G), file=out)
        return 0

    if args.command == "counterexample":
        print(io.format_instance(counterexample_instance()), end="", file=out)
        return 0

    if args.command == "export-dot":
        G = io.parse_triangulation(_read(args.graph))
        Path(args.output).write_text(io.export_dot(G))
        print(f"wrote {args.output}", file=out)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))

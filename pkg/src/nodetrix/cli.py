"""Command-line interface: a thin client over the layout library.

Exit codes: 0 when a result was computed, 2 when the result is a negative
verdict (infeasible / not locally planar / nonplanar rotation), 1 on input
errors. Verdicts are results scripts can branch on, not failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .fixtures import BetweennessInstance, gen_betweenness, brute_force_oracle, random_instance
from .jsonio import (
    InstanceParseError,
    parse_instance,
    serialize_drawing,
    serialize_instance,
)
from .layout import (
    InvalidInstanceError,
    PipeViolationError,
    check_fixed_order_and_side,
    editor_heuristic,
    solve_exact_fixed_order,
)
from .model import adjacent_cluster_pairs
from .geometry import validate_pipes
from .rotation import UnsupportedRotationError, planarity_with_fixed_order_and_sides
from .svg import render_svg

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NEGATIVE_VERDICT = 2


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _default_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("NTX_SEED")
    return int(env) if env else 0


def _add_io_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-i", "--input", default=None, help="instance JSON (default: stdin)")
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ntx",
        description="Side assignment for inter-cluster edges of matrix-style "
        "clustered graph drawings.",
    )
    parser.add_argument("--version", action="version", version=f"ntx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="editor heuristic (no sweep edges, MAX-2-SAT)")
    _add_io_args(p)
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $NTX_SEED or 0)")
    p.add_argument(
        "--exact-maxsat-limit",
        type=int,
        default=20,
        help="variable count up to which MAX-2-SAT is solved exactly",
    )

    p = sub.add_parser("solve-exact", help="exact decision via sweep-edge guess enumeration")
    _add_io_args(p)

    p = sub.add_parser("check", help="verdict for a full fixed order + side assignment")
    _add_io_args(p)

    p = sub.add_parser(
        "planarity-fixed",
        help="planarity with fixed orders and sides but free matrix positions",
    )
    _add_io_args(p)

    p = sub.add_parser("oracle", help="brute-force minimum crossing count (small instances)")
    _add_io_args(p)
    p.add_argument("--no-s", action="store_true", help="exclude S-shaped sweep drawings")
    p.add_argument("--max-edges", type=int, default=12)

    p = sub.add_parser("gen", help="generate instances")
    gen_sub = p.add_subparsers(dest="generator", required=True)
    pb = gen_sub.add_parser("betweenness", help="ordering-constraint gadget instance")
    pb.add_argument("-o", "--output", default=None)
    pb.add_argument("--items", required=True, help="comma-separated item names")
    pb.add_argument(
        "--triplets",
        required=True,
        help='semicolon-separated triplets, e.g. "a,b,c;b,c,a"',
    )
    pb.add_argument(
        "--order",
        default=None,
        help="item order to fix in the matrices (default: the items as given)",
    )
    pr = gen_sub.add_parser("random", help="random instance on a jittered grid")
    pr.add_argument("-o", "--output", default=None)
    pr.add_argument("--clusters", type=int, required=True)
    pr.add_argument("--cluster-size", type=int, default=3)
    pr.add_argument("--edges", type=int, required=True)
    pr.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("render", help="render instance (and solved layout) as SVG")
    _add_io_args(p)
    p.add_argument("--splines", action="store_true", help="draw edges as quadratic splines")
    p.add_argument("--seed", type=int, default=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (InstanceParseError, InvalidInstanceError, PipeViolationError,
            UnsupportedRotationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "solve":
        g, cfg = parse_instance(_read(args.input))
        drawing = editor_heuristic(
            g, cfg, seed=_default_seed(args.seed), exact_maxsat_limit=args.exact_maxsat_limit
        )
        warnings = validate_pipes(
            cfg, [(a, b) for a, b, _ in adjacent_cluster_pairs(g)]
        )
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        _write(args.output, serialize_drawing(drawing))
        return EXIT_OK

    if args.command == "solve-exact":
        g, cfg = parse_instance(_read(args.input))
        drawing = solve_exact_fixed_order(g, cfg)
        _write(args.output, serialize_drawing(drawing))
        return EXIT_OK if drawing is not None else EXIT_NEGATIVE_VERDICT

    if args.command == "check":
        g, cfg = parse_instance(_read(args.input))
        drawing = check_fixed_order_and_side(g, cfg)
        _write(args.output, serialize_drawing(drawing))
        return EXIT_OK if drawing.locally_planar else EXIT_NEGATIVE_VERDICT

    if args.command == "planarity-fixed":
        g, cfg = parse_instance(_read(args.input))
        planar = planarity_with_fixed_order_and_sides(g, cfg)
        _write(args.output, json.dumps({"planar": planar}, indent=2) + "\n")
        return EXIT_OK if planar else EXIT_NEGATIVE_VERDICT

    if args.command == "oracle":
        g, cfg = parse_instance(_read(args.input))
        min_chi, sides = brute_force_oracle(
            g, cfg, restrict_no_sweep=args.no_s, max_edges=args.max_edges
        )
        doc = {
            "minChi": min_chi,
            "sides": {eid: {"u": su, "v": sv} for eid, (su, sv) in sorted(sides.items())},
        }
        _write(args.output, json.dumps(doc, indent=2) + "\n")
        return EXIT_OK

    if args.command == "gen":
        if args.generator == "betweenness":
            items = tuple(s.strip() for s in args.items.split(",") if s.strip())
            triplets = tuple(
                tuple(x.strip() for x in chunk.split(","))
                for chunk in args.triplets.split(";")
                if chunk.strip()
            )
            inst = BetweennessInstance(items=items, triplets=triplets)
            order = (
                [s.strip() for s in args.order.split(",")] if args.order else list(items)
            )
            g, cfg = gen_betweenness(inst, order)
        else:
            g, cfg = random_instance(
                args.clusters, args.cluster_size, args.edges, _default_seed(args.seed)
            )
        _write(args.output, serialize_instance(g, cfg))
        return EXIT_OK

    if args.command == "render":
        g, cfg = parse_instance(_read(args.input))
        if cfg.sides is not None:
            drawing = check_fixed_order_and_side(g, cfg)
        else:
            drawing = editor_heuristic(g, cfg, seed=_default_seed(args.seed))
        _write(args.output, render_svg(g, cfg, drawing, splines=args.splines))
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())

"""``anonimos`` command line."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence, Tuple

from . import pipeline
from .pipeline import RunConfig


def _pair(text: str) -> Tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'L,U', got {text!r}") from None
    return lo, hi


def _vertex_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # config errors exit 3, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(pipeline.EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, default_mode: str) -> None:
    p.add_argument("-i", "--input", required=True, help="edge-list file (u v w per line)")
    p.add_argument("--directed", action="store_true", help="treat edges as directed u->v")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--source", type=int, help="single source vertex (default 0)")
    which.add_argument("--mode", choices=("sssp", "apsp"), help=f"apsp = every vertex is a source (default {default_mode})")
    which.add_argument("--sources", type=_vertex_list, help="comma-separated source vertices")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--bucket", type=float, default=1.0, help="k-anonymity bucket width (default 1.0)")
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(default_mode=default_mode)


def _model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--constraints", choices=("trace", "optimality"), default="optimality",
                   help="trace: every Dijkstra comparison; optimality: one row per non-tree edge direction")
    p.add_argument("--delta", type=float, default=1.0, help="strictness margin for preserved paths (default 1.0)")
    p.add_argument("--bounds", type=_pair, default=(1.0, 1000.0), help="weight box L,U (default 1,1000)")
    p.add_argument(
        "--epsilon",
        type=float,
        help="also keep every preserved path cost within D +/- epsilon; the box then widens to "
        "L' = min(L, w_min * max(1 - epsilon/d_min, 0.001)), U' = max(U, max D), "
        "w_min = smallest weight, d_min = smallest non-zero distance",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="anonimos", description="Shortest-path-preserving edge-weight anonymization.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("anonymize", help="write a re-weighted graph with the same shortest paths")
    _common(p, "sssp")
    _model_flags(p)
    p.add_argument("--rounds", type=int, default=1, help="random objectives to try; keeps smallest |tau| (default 1)")
    p.add_argument("--figure", help="PNG comparing original and anonymized weights")
    p.set_defaults(func=pipeline.run_anonymize)

    p = sub.add_parser("export-lp", help="write the LP in CPLEX LP format")
    _common(p, "sssp")
    _model_flags(p)
    p.set_defaults(func=pipeline.run_export_lp)

    for name, func, text in (
        ("verify", pipeline.run_verify, "exit 0 iff every checked tree is unchanged (4 otherwise)"),
        ("metrics", pipeline.run_metrics, "report metrics between two graphs"),
    ):
        p = sub.add_parser(name, help=text)
        _common(p, "apsp")
        p.add_argument("-a", "--anonymized", required=True, help="re-weighted graph to compare")
        if name == "metrics":
            p.add_argument("--figure", help="PNG comparing the two weight vectors")
        p.set_defaults(func=func)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.sources is not None:
        mode, sources = "subset", args.sources
    elif args.source is not None:
        mode, sources = "sssp", ()
    else:
        mode, sources = args.mode or args.default_mode, ()
    config = RunConfig(
        input=args.input,
        output=getattr(args, "output", None),
        anonymized=getattr(args, "anonymized", None),
        directed=args.directed,
        mode=mode,
        source=args.source if args.source is not None else 0,
        sources=sources,
        seed=args.seed,
        bucket=args.bucket,
        report=args.report,
        figure=getattr(args, "figure", None),
    )
    if hasattr(args, "constraints"):
        config.constraints = args.constraints
        config.delta = args.delta
        config.lower, config.upper = args.bounds
        config.epsilon = args.epsilon
    if hasattr(args, "rounds"):
        config.rounds = args.rounds
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return args.func(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())

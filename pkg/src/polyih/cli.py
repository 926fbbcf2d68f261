"""Command-line entry point: ``polyih <subcommand> (--builtin NAME | PATH) [flags]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .builtins import MAX_DIM, builtin_polytope
from .errors import DimensionTooLarge, InputError, ParseError, PolyIHError
from .polytope import HPolytope, parse_validate
from .report import COMMANDS, Options


def load_polytope(builtin: str | None, path: str | None, max_dim: int = MAX_DIM) -> HPolytope:
    if (builtin is None) == (path is None):
        raise InputError("give exactly one of --builtin NAME or a JSON path")
    if builtin is not None:
        return builtin_polytope(builtin, max_dim)
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    P = parse_validate(raw, label=path)
    if P.dim > max_dim:
        raise DimensionTooLarge(f"dimension {P.dim} exceeds the guard {max_dim}")
    return P


def _calibration(text: str) -> tuple[str, ...]:
    names = tuple(x.strip() for x in text.split(","))
    if not all(names):
        raise argparse.ArgumentTypeError("expected comma-separated facet names")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", nargs="?", help="polytope JSON file")
    common.add_argument("--builtin", help="builtin polytope, e.g. pyr-square, octahedron, cube(3), pyr(pyr-square)")
    common.add_argument("--seed", type=int, default=20240613)
    common.add_argument("--samples", type=int, default=256, help="random displacements per run")
    common.add_argument("--max-orderings", type=int, default=5040)
    common.add_argument("--holdout", type=int, default=24, help="fresh samples for hold-out validation")
    common.add_argument("--calibrate", type=_calibration, metavar="N,E,B",
                        help="rescale intersection numbers so this facet product equals 1")
    common.add_argument("--degree", type=int)
    common.add_argument("--expr", help="expression to test for uniformity (uniform subcommand)")
    common.add_argument("--mode", choices=["vs-space", "full-degree"], default="vs-space")
    common.add_argument("--max-dim", type=int, default=MAX_DIM)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="polyih", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.samples < 0 or args.holdout < 0 or args.max_orderings < 1:
            raise InputError("--samples and --holdout must be >= 0 and --max-orderings >= 1")
        P = load_polytope(args.builtin, args.path, args.max_dim)
        opts = Options(
            command=args.command, source=args.builtin or args.path, seed=args.seed, samples=args.samples,
            max_orderings=args.max_orderings, holdout=args.holdout, calibrate=args.calibrate,
            degree=args.degree, expr=args.expr, mode=args.mode,
        )
        report = COMMANDS[args.command](P, opts)
    except PolyIHError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

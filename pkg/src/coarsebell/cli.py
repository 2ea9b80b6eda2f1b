"""Command-line front end.

Two subcommands::

    coarsebell sweep <jobfile> --csv out.csv [--svg out.svg]
    coarsebell point <system> [--param name=value ...]

Exit codes: 0 on success, 2 for validation problems (bad job file, unknown
system or parameter, malformed grid), 3 when a numerical routine failed to
converge.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .ecs import ConvergenceError
from .sweep import JobError, SYSTEMS, emit_csv, emit_svg, optimized_point, parse_job, run_sweep

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarsebell",
        description="Optimized Bell/Leggett-Garg violations under coarsened measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a sweep described by a job file")
    sweep.add_argument("jobfile", help="path to a job file (flat key = value format)")
    sweep.add_argument("--csv", required=True, help="output CSV path")
    sweep.add_argument("--svg", default=None, help="optional output SVG path")
    sweep.add_argument("--starts", type=int, default=None, help="multistart count")
    sweep.add_argument(
        "--quadrature-order", type=int, default=None, help="Gauss-Hermite order override"
    )

    point = sub.add_parser("point", help="optimize a single configuration")
    point.add_argument("system", help=f"one of: {', '.join(sorted(SYSTEMS))}")
    point.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="system parameter (repeatable), e.g. --param n=2 --param V=0.25",
    )
    point.add_argument("--starts", type=int, default=None, help="multistart count")
    point.add_argument(
        "--quadrature-order", type=int, default=None, help="Gauss-Hermite order override"
    )
    return parser


def _parse_param_args(pairs: Sequence[str]) -> dict[str, float]:
    params: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            raise JobError(f"--param expects NAME=VALUE, got {pair!r}")
        name, _, value = pair.partition("=")
        name = name.strip()
        if not name:
            raise JobError(f"--param expects NAME=VALUE, got {pair!r}")
        try:
            params[name] = float(value.strip())
        except ValueError:
            raise JobError(f"--param {name!r}: not a number: {value.strip()!r}") from None
    return params


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return _run_sweep_command(args)
        return _run_point_command(args)
    except JobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def _run_sweep_command(args: argparse.Namespace) -> int:
    with open(args.jobfile) as fh:
        spec = parse_job(fh.read())
    result = run_sweep(spec, starts=args.starts, quadrature_order=args.quadrature_order)
    emit_csv(result, args.csv)
    if args.svg is not None:
        emit_svg(result, args.svg, title=spec.system)
    if not all(row.converged for row in result.rows):
        bad = sum(1 for row in result.rows if not row.converged)
        print(f"error: {bad} sweep point(s) did not converge", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _run_point_command(args: argparse.Namespace) -> int:
    params = _parse_param_args(args.param)
    result = optimized_point(
        args.system, params, starts=args.starts, quadrature_order=args.quadrature_order
    )
    angles = ", ".join(f"{a:.12g}" for a in result.argmax)
    print(f"value = {result.value:.12g}")
    print(f"argmax = ({angles})")
    if not result.converged:
        print("error: optimizer did not converge", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

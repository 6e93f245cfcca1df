"""
ZetaSurf command-line entry point

    python -m ZS_engine.cli [global flags] <subcommand> [options]

Exit codes: 0 success, 1 numeric failure, 2 input error.
"""

import argparse
import sys

from ZS_engine.commands import (
    cmd_bounds,
    cmd_detz,
    cmd_invariants,
    cmd_resonances,
    cmd_spectrum,
    cmd_sweep,
    cmd_zeta,
)
from ZS_engine.config.output_store import OutputStore
from ZS_engine.config.precision import configure_precision
from ZS_engine.config.run_config import DEFAULT_CONFIG_PATH, RunConfig
from ZS_engine.errors import BoundaryZero, ZetaSurfError
from utils.util import log_info, print_green, set_log_level


def _add_global_flags(parser: argparse.ArgumentParser, default) -> None:
    # subparsers use SUPPRESS so flags given before the subcommand survive
    parser.add_argument("--config", default=default, help=f"YAML config (default: {DEFAULT_CONFIG_PATH} if present)")
    parser.add_argument("--prec", type=int, default=default, help="Precision in decimal digits (ZS_PRECISION wins)")
    parser.add_argument("--threads", type=int, default=default, help="Thread budget")
    parser.add_argument("--out", default=default, help="Output directory")
    parser.add_argument("--convention", choices=["oriented", "unoriented"], default=default, help="Zeta convention")


def _add_points(parser: argparse.ArgumentParser) -> None:
    points = parser.add_mutually_exclusive_group(required=True)
    points.add_argument("--s", nargs="+", help="Points such as 2, 0.5+14j (use --s=-1+2j for a leading minus)")
    points.add_argument(
        "--s-grid",
        nargs=6,
        type=float,
        metavar=("RE0", "RE1", "IM0", "IM1", "NRE", "NIM"),
        help="Rectangular grid of points",
    )
    parser.add_argument("--lmax", type=float, default=None, help="Length cutoff of the Euler product")
    parser.add_argument("--kmax", type=int, default=None, help="Last k of the inner product")
    parser.add_argument("--extended", action="store_true", help="Allow the heuristic extended region")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ZS_engine.cli", description="ZetaSurf: zeta functions of hyperbolic surfaces")
    _add_global_flags(parser, None)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum = sub.add_parser("spectrum", parents=[common], help="Enumerate the length spectrum")
    spectrum.add_argument("surface", help="Surface JSON")
    spectrum.add_argument("--lmax", type=float, required=True, help="Length cutoff")
    spectrum.add_argument("--allow-incomplete", action="store_true", help="Write a partial spectrum")
    spectrum.set_defaults(handler=cmd_spectrum)

    zeta = sub.add_parser("zeta", parents=[common], help="Evaluate log Z(s)")
    zeta.add_argument("surface", help="Surface JSON")
    _add_points(zeta)
    zeta.set_defaults(handler=cmd_zeta)

    detz = sub.add_parser("detz", parents=[common], help="Evaluate log D(s)")
    detz.add_argument("surface", help="Surface JSON")
    _add_points(detz)
    detz.add_argument("--F", type=float, default=None, help="Constant F")
    detz.add_argument("--G", type=float, default=None, help="Constant G")
    detz.add_argument("--sarnak", action="store_true", help="F = chi, G = -chi E")
    detz.add_argument("--det-laplacian", action="store_true", help="Add a log det Laplacian row")
    detz.set_defaults(handler=cmd_detz)

    resonances = sub.add_parser("resonances", parents=[common], help="Zeros of Z in a rectangle")
    resonances.add_argument("surface", nargs="?", default=None, help="Surface JSON (instead of --cylinder)")
    resonances.add_argument("--cylinder", type=float, default=None, help="Cylinder length")
    resonances.add_argument(
        "--rect",
        nargs=4,
        type=float,
        required=True,
        metavar=("X0", "X1", "Y0", "Y1"),
        help="Search rectangle; an edge through a zero (e.g. -3 0.5 -7 7 for --cylinder 1) fails unless --nudge is given",
    )
    resonances.add_argument("--tol", type=float, default=None, help="Location tolerance")
    resonances.add_argument("--lmax", type=float, default=None, help="Length cutoff for a surface")
    resonances.add_argument(
        "--nudge",
        type=int,
        default=0,
        help="Outward edge moves allowed when an edge meets a zero (default 0: fail with exit 1)",
    )
    resonances.set_defaults(handler=cmd_resonances)

    invariants = sub.add_parser("invariants", parents=[common], help="Heat invariants of a conformal factor")
    invariants.add_argument("chart", help="Chart JSON")
    invariants.add_argument("phi", nargs="?", default=None, help="phi samples (CSV, n_t rows x n_theta columns)")
    invariants.add_argument("--bump", default=None, help="Configured bump name")
    invariants.add_argument("--aj", nargs=2, type=float, default=None, metavar=("J", "CJ"), help="Leading term of a_J")
    invariants.add_argument("--compactness", type=float, default=None, metavar="C", help="Bound chain for log D(1) >= C")
    invariants.set_defaults(handler=cmd_invariants)

    sweep = sub.add_parser("sweep", parents=[common], help="Properness sweep")
    sweep.add_argument("--pants-uniform", action="store_true", help="Family (l, l, l)")
    sweep.add_argument("--lmin", type=float, required=True)
    sweep.add_argument("--lmax", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.set_defaults(handler=cmd_sweep)

    bounds = sub.add_parser("bounds", parents=[common], help="Systole, zeta and Bers bounds")
    bounds.add_argument("surface", help="Surface JSON")
    bounds.add_argument("--lmax", type=float, default=None, help="Length cutoff")
    bounds.add_argument("--bers-t", nargs="+", type=float, default=None, help="Collar widths")
    bounds.set_defaults(handler=cmd_bounds)
    return parser


def _config_path(args) -> str | None:
    if args.config:
        return args.config
    try:
        with open(DEFAULT_CONFIG_PATH, encoding="utf-8"):
            return DEFAULT_CONFIG_PATH
    except OSError:
        return None


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse usage errors exit with 2, --help with 0
        return int(e.code or 0)

    try:
        # 1. Load config (CLI arg takes precedence over config)
        config = RunConfig.create(
            _config_path(args),
            overrides={
                "precision": args.prec,
                "threads": args.threads,
                "output_dir": args.out,
                "zeta_convention": args.convention,
            },
        )
        set_log_level(config.log_level)
        configure_precision(config.precision, config.zeta.guard_digits)
        log_info("CLI", f"{args.command}: precision {config.precision}, {config.threads} threads")

        # 2. Run the command
        store = OutputStore(config.output_dir, config.precision)
        result = args.handler(args, config, store)
    except BoundaryZero as e:
        print(f"[CLI] Error: {e} (suggested perturbation {e.suggested_shift:.3g})", file=sys.stderr)
        return e.exit_code
    except ZetaSurfError as e:
        print(f"[CLI] Error ({type(e).__name__}): {e}", file=sys.stderr)
        return e.exit_code

    # 3. Summary
    print_green(f"[CLI] {result.summary}")
    for output in result.outputs:
        log_info("CLI", f"Output: {output}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

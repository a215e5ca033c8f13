"""Argument parsing, dispatch and the exit-code contract."""

import argparse
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from analysis.report_io import render_text, write_report
from cli.commands import COMMANDS
from cli.loader import load_run_config, run_directory
from core.errors import ConfigError, HypothesisError, MeasureError, NumericalError
from core.logging import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_VERDICT = 4

# flag -> argparse type; the dest is the RunConfig field
SCALAR_FLAGS: dict[str, type] = {
    "game": str,
    "potential": str,
    "sigma": float,
    "sigmas": str,
    "n": int,
    "n-list": str,
    "dt": float,
    "t-end": float,
    "record-every": int,
    "replicas": int,
    "seed": int,
    "seeds": int,
    "grid-lo": float,
    "grid-hi": float,
    "grid-nodes": int,
    "tol": float,
    "damping": float,
    "max-iter": int,
    "trials": int,
    "samples": int,
    "r-list": str,
    "slack": float,
    "reference": str,
    "proxy-factor": int,
    "p": float,
    "offset": float,
    "t-min": float,
    "init-scale": float,
    "calibrated-c": float,
    "bench-n": str,
    "bench-steps": int,
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value run file")
    common.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="game parameter")
    common.add_argument(
        "--potential-param", action="append", default=[], metavar="NAME=VALUE", help="potential parameter"
    )
    common.add_argument("--workers", type=int, default=None, help="worker pool size")
    common.add_argument("--out", dest="output_dir", default=None, help="run directory (default: hashed)")
    common.add_argument("--snapshots", action="store_true", default=None, help="write particle snapshots")
    common.add_argument("--refine", action="store_true", default=None, help="refine best responses")
    for flag, kind in SCALAR_FLAGS.items():
        common.add_argument(f"--{flag}", type=kind, default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfl",
        description="Langevin particle approximations of Nash and mean field game equilibria",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for command in COMMANDS.values():
        sub.add_parser(command.name, help=command.help, parents=[common])
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    fields = [flag.replace("-", "_") for flag in SCALAR_FLAGS] + ["workers", "output_dir", "snapshots", "refine"]
    return {name: getattr(args, name) for name in fields}


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    command = COMMANDS[args.command]
    try:
        cfg = load_run_config(
            command.name,
            defaults=command.defaults,
            config_path=args.config,
            overrides=_overrides(args),
            params=args.param,
            potential_params=args.potential_param,
        )
        out = run_directory(cfg)
        report = command.handler(cfg, out)
    except (ConfigError, MeasureError, HypothesisError, ValidationError) as e:
        logger.error("run_rejected", command=command.name, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error("run_failed", command=command.name, error=str(e), **e.context)
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL

    if report is None:
        return EXIT_OK
    write_report(out, report)
    print(render_text(report), end="")
    return EXIT_OK if report.passed else EXIT_VERDICT


def main() -> None:
    setup_logging()
    sys.exit(run())

"""badapt <subcommand> --config <file> [--out <dir>] [--seed <int>]"""

import argparse
import logging
import sys
from typing import List, Optional

from src.config import get_config
from src.errors import BadaptError, NumericalDiagnosticError
from src.harness import Command, load_experiment, run
from src.print_utils import print_error, print_summary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="badapt",
        description="Besov and Kondratiev regularity experiments for parabolic problems",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = subparsers.add_parser(command.label)
        sub.add_argument("--config", help="flat key=value experiment file")
        sub.add_argument("--out", help="output directory (default: BADAPT_OUT_DIR or runs)")
        sub.add_argument("--seed", type=int, help="random seed")
        sub.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one config key; may be repeated",
        )
        if command is Command.PENCIL:
            sub.add_argument("--theta", type=float, help="opening angle in radians")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=get_config().LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    overrides = list(args.overrides)
    if getattr(args, "theta", None) is not None:
        overrides.append(f"theta_rad={args.theta!r}")

    try:
        # --- 1. Resolve the experiment
        config = load_experiment(args.command, args.config, args.out, args.seed, overrides)

        # --- 2. Run it and print the summary
        summary = run(config)
        print_summary(args.command, summary)
        return EXIT_OK
    except NumericalDiagnosticError as e:
        logger.error(f"{args.command}: numerical diagnostic failed: {e}")
        print_error(args.command, e, EXIT_NUMERICAL)
        return EXIT_NUMERICAL
    except BadaptError as e:
        logger.error(f"{args.command}: {e}")
        print_error(args.command, e, EXIT_CONFIG)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
pd-schauder - command-line entry point.

Featurizes signed persistence diagrams with a truncated Schauder basis,
computes exact W1 distances, runs the verification suites and exports
plot data. Results go to stdout (or --out); logs go to stderr.
"""

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

sys.path.insert(0, str(Path(__file__).parent))

from dotenv import load_dotenv
from loguru import logger

from src.cli import EXIT_INPUT_ERROR, SUITES, CommandRunner, RunConfig
from src.diagrams import FORMATS
from src.errors import SchauderError

LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {extra[module]} - {message}"


def configure_logging() -> None:
    level = os.getenv("LOG_LEVEL", "INFO")
    logger.remove()
    logger.configure(extra={"module": "pd-schauder"})
    logger.add(lambda msg: sys.stderr.write(msg), level=level, format=LOG_FORMAT, colorize=False)
    log_file = os.getenv("LOG_FILE")
    if log_file:
        logger.add(log_file, rotation="10 MB", retention="7 days", level=level)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--pair", help="pair JSON file, or a preset: plane, mixup, barcode:<d>")
    shared.add_argument("--z", type=int, help="refinement factor (default 2)")
    shared.add_argument("--schedule", help="geometric:<L0>,<rho> or split:<L0>,<eps>,<rho> (default L_n = z^-n)")
    shared.add_argument("--layers", type=int, help="N_max, the finest layer kept (default 4)")
    shared.add_argument("--rafter", type=int, help="rafter radius R of the window (default 4)")
    shared.add_argument("--kind", choices=["plain", "stacked"], help="basis kind (default plain)")
    shared.add_argument("--format", choices=list(FORMATS), help="input format (default csv)")
    shared.add_argument("--seed", type=int, help="seed for randomized suites (default PD_SCHAUDER_SEED or 42)")
    shared.add_argument("--out", help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="pd-schauder", description="Schauder-basis vectorization of signed diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    vec = sub.add_parser("vectorize", parents=[shared], help="featurize diagram files")
    vec.add_argument("inputs", nargs="+")
    vec.add_argument("--dense", action="store_true", help="write a dense CSV matrix plus a column sidecar")
    vec.add_argument("--workers", type=int, help="joblib workers for dense batches (default PD_SCHAUDER_WORKERS)")

    dist = sub.add_parser("distance", parents=[shared], help="exact W1 between two diagrams")
    dist.add_argument("file_a")
    dist.add_argument("file_b")
    dist.add_argument("--matching", action="store_true", help="also print the optimal matching")

    check = sub.add_parser("check", parents=[shared], help="run the verification suites")
    check.add_argument("--suite", action="append", choices=list(SUITES), dest="suites")
    check.add_argument("--trials", type=int, help="override every selected suite's trial count")

    viz = sub.add_parser("viz-export", parents=[shared], help="per-point segment data for plotting")
    viz.add_argument("input")

    sub.add_parser("basis-info", parents=[shared], help="summarize the truncated basis")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    configure_logging()
    log = logger.bind(module="main")

    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = RunConfig.from_args(
            pair=args.pair,
            z=args.z,
            schedule=args.schedule,
            layers=args.layers,
            rafter=args.rafter,
            kind=args.kind,
            format=args.format,
            seed=args.seed,
            out=args.out,
            workers=getattr(args, "workers", None),
        )
    except SchauderError as exc:
        log.error(f"Invalid configuration: {exc}")
        return EXIT_INPUT_ERROR

    params = {
        "vectorize": lambda: {"inputs": args.inputs, "dense": args.dense},
        "distance": lambda: {"file_a": args.file_a, "file_b": args.file_b, "matching": args.matching},
        "check": lambda: {"suites": args.suites, "trials": args.trials},
        "viz-export": lambda: {"input": args.input},
        "basis-info": lambda: {},
    }[args.command]()
    return CommandRunner(config).execute(args.command, params)


if __name__ == "__main__":
    sys.exit(main())

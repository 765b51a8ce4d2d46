"""
Main entry point for the povm-forge command line.
"""
import argparse
import json
import logging
import sys

from pydantic import ValidationError

from cli import EXIT_USAGE, CommandRequest, run_command
from config import (
    AVAILABLE_RNGS,
    DEFAULT_CURVE_EPSILONS,
    DEFAULT_CURVE_GRID,
    DEFAULT_RNG,
    DEFAULT_SEED,
    LOG_LEVEL,
    SHOT_BATCH_SIZE,
)


class JsonArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as single-line JSON on stderr."""

    def error(self, message):
        sys.stderr.write(json.dumps({"error": message, "kind": "UsageError", "invariant": "command usage"}) + "\n")
        sys.exit(EXIT_USAGE)


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got '{text}'")


def build_parser() -> argparse.ArgumentParser:
    parser = JsonArgumentParser(prog="povm-forge", description="Build, sample and invert single-qubit measurements.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=JsonArgumentParser)

    def common(p, config_required=False):
        p.add_argument("-c", "--config", dest="config_path", required=config_required, help="Config or artifact JSON")
        p.add_argument("-o", "--output", dest="output_path", help="Write here instead of stdout")
        p.add_argument("--pretty", action="store_true", help="Indent JSON output")

    common(sub.add_parser("build", help="Construct operators from a config"), config_required=True)

    sample = sub.add_parser("sample", help="Born-rule sampling of a config")
    common(sample, config_required=True)
    sample.add_argument("--state", default="H", help="Preset (H, V, D, A, R, L) or {\"cH\":[re,im],\"cV\":[re,im]}")
    sample.add_argument("--shots", type=int, default=1000)
    sample.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sample.add_argument("--rng", choices=AVAILABLE_RNGS, default=DEFAULT_RNG)
    sample.add_argument("--batch-size", dest="batch_size", type=int, default=SHOT_BATCH_SIZE)
    sample.add_argument("--summary-only", dest="summary_only", action="store_true", help="Skip per-shot records")

    invert = sub.add_parser("invert", help="Find a config for a target measurement")
    common(invert)
    group = invert.add_mutually_exclusive_group(required=True)
    group.add_argument("--target", help="eps=..,theta=..,phi=.. or p=..,q=..,theta=..,phi=..")
    group.add_argument("--povm", dest="povm_path", help="JSON list of positive operators")

    curves = sub.add_parser("curves", help="Polar angle against reflectivity as CSV")
    common(curves)
    curves.add_argument("--eps", type=_float_list, default=list(DEFAULT_CURVE_EPSILONS))
    curves.add_argument("--grid", type=int, default=DEFAULT_CURVE_GRID)

    common(sub.add_parser("validate", help="Re-check every invariant of a build artifact"), config_required=True)
    return parser


def main(argv=None) -> int:
    """Parse arguments and run one subcommand."""
    logging.basicConfig(
        level=LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    fields = {key: value for key, value in vars(args).items() if value is not None}
    try:
        request = CommandRequest(**fields)
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        sys.stderr.write(json.dumps({"error": message, "kind": "UsageError", "invariant": "command usage"}) + "\n")
        return EXIT_USAGE
    return run_command(request)


if __name__ == "__main__":
    sys.exit(main())

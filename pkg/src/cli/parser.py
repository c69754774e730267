"""Argument parser of the geomark command line."""

import argparse

from marks import MarkModel
from utils.constants import APP_DESCRIPTION, APP_NAME, APP_VERSION


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _experiment_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="TOML or JSON experiment file")
    common.add_argument("--seed", type=int, default=None, help="Master seed of the run")
    common.add_argument(
        "--out", type=str, default=None, help="Run directory (default: $GEOMARK_OUT/<mark>)"
    )
    common.add_argument("--preset", choices=["desk", "paper"], default=None, help="Scale preset")
    common.add_argument(
        "--mark", choices=[m.value for m in MarkModel], default=None, help="Mark model"
    )
    common.add_argument("--n-train", type=int, default=None, help="Number of training patterns")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per pipeline stage plus ``pipeline`` and ``config``."""
    parser = argparse.ArgumentParser(prog=APP_NAME, description=APP_DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _experiment_options()

    sub.add_parser("generate", parents=[common], help="Sample and mark the datasets")
    sub.add_parser("scatter", parents=[common], help="Compute scattering features")
    sub.add_parser("train", parents=[common], help="Fit the ridge regression")
    sub.add_parser("reconstruct", parents=[common], help="Reconstruct test marks")
    baseline = sub.add_parser("baseline", parents=[common], help="Run the distance benchmark")
    baseline.add_argument(
        "--k-sweep",
        type=_int_list,
        default=None,
        metavar="K1,K2,...",
        help="Also evaluate the benchmark for these neighbourhood sizes",
    )
    sub.add_parser("evaluate", parents=[common], help="Compute metrics and export outputs")
    pipeline = sub.add_parser("pipeline", parents=[common], help="Run every stage")
    pipeline.add_argument("--k-sweep", type=_int_list, default=None, metavar="K1,K2,...")

    config = sub.add_parser("config", parents=[common], help="Show the resolved configuration")
    config.add_argument(
        "--dump-defaults", action="store_true", help="Print the resolved config as JSON on stdout"
    )
    return parser

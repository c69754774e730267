"""Subcommand handlers: resolve the experiment config and run the requested stage."""

import argparse
from pathlib import Path

from config import settings
from harness import (
    ExperimentConfig,
    RunLayout,
    dump_config,
    resolve_config,
    run_pipeline,
    stage_baseline,
    stage_evaluate,
    stage_generate,
    stage_reconstruct,
    stage_scatter,
    stage_train,
)
from log import get_logger
from marks import MarkModel

logger = get_logger()

# Commands that start a run and must not pick up a previous run's config.
_FRESH_COMMANDS = {"generate", "pipeline", "config"}


def run_layout(args: argparse.Namespace) -> RunLayout:
    """Run directory chosen by ``--out`` or derived from the mark model.

    Without ``--out`` the mark comes from ``--mark``, then from the ``--config`` file.
    """
    if args.out:
        return RunLayout(Path(args.out))
    if args.config:
        mark = resolve_config(Path(args.config), mark=args.mark).mark
    else:
        mark = MarkModel(args.mark) if args.mark else MarkModel.SHOT_NOISE
    return RunLayout(Path(settings.geomark_out) / mark.value)


def experiment_config(args: argparse.Namespace, layout: RunLayout) -> ExperimentConfig:
    """Config from flags; later stages fall back to the config saved in the run directory."""
    path = args.config
    if path is None and args.command not in _FRESH_COMMANDS and layout.config.exists():
        path = layout.config
    return resolve_config(
        Path(path) if path else None,
        preset=args.preset,
        mark=args.mark,
        seed=args.seed,
        n_train=args.n_train,
    )


def dispatch(args: argparse.Namespace) -> None:
    """Run the subcommand named by ``args.command``."""
    layout = run_layout(args)
    cfg = experiment_config(args, layout)
    workers = settings.geomark_threads
    logger.info(
        "Command started",
        extra={"command": args.command, "mark": cfg.mark.value, "out": str(layout.root)},
    )
    match args.command:
        case "config":
            if args.dump_defaults:
                print(dump_config(cfg))
            else:
                logger.info("Resolved config", extra=cfg.model_dump(mode="json"))
        case "generate":
            stage_generate(cfg, layout, workers)
        case "scatter":
            stage_scatter(cfg, layout, workers)
        case "train":
            stage_train(cfg, layout)
        case "reconstruct":
            stage_reconstruct(cfg, layout, workers)
        case "baseline":
            stage_baseline(cfg, layout, args.k_sweep)
        case "evaluate":
            stage_evaluate(cfg, layout)
        case "pipeline":
            run_pipeline(cfg, layout.root, workers, args.k_sweep)

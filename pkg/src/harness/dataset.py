"""Seeded generation of marked Poisson pattern datasets."""

from functools import partial

from geometry import MarkedPattern, TorusWindow, sample_poisson, spawn_seeds
from log import get_logger
from marks import compute_marks
from raster import has_collision
from utils.errors import GeomarkError, NumericalError
from utils.pool import parallel_map

from .experiment import ExperimentConfig
from .layout import Split

logger = get_logger()

SPLIT_STREAMS: dict[str, int] = {"train": 0, "test": 1, "validation": 2}


def split_size(cfg: ExperimentConfig, split: Split) -> int:
    """Number of patterns drawn for ``split``."""
    match split:
        case "train":
            return cfg.n_train
        case "test":
            return cfg.n_test
        case "validation":
            return cfg.reconstruction.tune_patterns


def _draw(index_seed: tuple[int, object], cfg: ExperimentConfig) -> tuple[MarkedPattern, int]:
    index, seed = index_seed
    window = TorusWindow(cfg.side)
    attempts = 0
    for attempt_seed in seed.spawn(cfg.max_resamples):
        attempts += 1
        pattern = sample_poisson(cfg.intensity, window, attempt_seed)
        if len(pattern) < cfg.mark.min_points or has_collision(pattern, cfg.bank.n):
            continue
        try:
            return compute_marks(cfg.mark, pattern, cfg.response.build()), attempts - 1
        except GeomarkError as e:
            raise e.with_context(pattern_id=index)
    raise NumericalError(
        "Pixel collisions persisted after every resample",
        pattern_id=index,
        resamples=cfg.max_resamples,
        n=cfg.bank.n,
    )


def generate_dataset(
    cfg: ExperimentConfig, split: Split, workers: int | None = None
) -> list[MarkedPattern]:
    """Sample and mark the patterns of one split.

    Pattern ``i`` of a split depends only on ``(cfg.seed, split, i)``. Patterns that
    collide at the raster size (or are too small for the mark model) are redrawn from
    the next child seed.

    Raises:
        NumericalError: If ``cfg.max_resamples`` draws all collide.
    """
    seeds = spawn_seeds(cfg.seed, split_size(cfg, split), SPLIT_STREAMS[split])
    drawn = parallel_map(partial(_draw, cfg=cfg), list(enumerate(seeds)), workers, chunksize=16)
    resampled = sum(count for _, count in drawn)
    logger.info(
        "Dataset generated",
        extra={"split": split, "patterns": len(drawn), "resampled": resampled},
    )
    return [mp for mp, _ in drawn]

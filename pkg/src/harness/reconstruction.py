"""Reconstruction stage: marks of test patterns from estimated and exact moment targets."""

from functools import partial
from typing import Sequence

import numpy as np
import pandas as pd

from geometry import MarkedPattern
from log import get_logger
from reconstruct import (
    ReconstructionConfig,
    ReconstructionResult,
    ValidationItem,
    iteration_cap_curve,
    reconstruct_marks,
)
from utils.errors import GeomarkError
from utils.pool import parallel_map

from .experiment import BankSettings, ReconstructionSettings
from .features import cached_bank
from .layout import TargetKind

logger = get_logger()


def initial_value(settings: ReconstructionSettings, training: Sequence[MarkedPattern]) -> float:
    """Constant start: the mean training mark, or the configured value."""
    if settings.init == "constant":
        return settings.init_value
    marks = np.concatenate([mp.marks for mp in training]) if training else np.zeros(0)
    return float(marks.mean()) if marks.size else settings.init_value


def _reconstruct_one(
    item: tuple[int, MarkedPattern, np.ndarray],
    settings: BankSettings,
    cfg: ReconstructionConfig,
) -> ReconstructionResult:
    index, mp, target = item
    try:
        return reconstruct_marks(mp.pattern, target, cached_bank(settings), cfg)
    except GeomarkError as e:
        raise e.with_context(pattern_id=index)


def reconstruct_split(
    patterns: Sequence[MarkedPattern],
    targets: np.ndarray,
    settings: BankSettings,
    cfg: ReconstructionConfig,
    workers: int | None = None,
) -> list[ReconstructionResult]:
    """Reconstruct every pattern's marks from its row of ``targets``, in pattern order."""
    items = [
        (i, mp, np.asarray(t, dtype=float)) for i, (mp, t) in enumerate(zip(patterns, targets))
    ]
    return parallel_map(partial(_reconstruct_one, settings=settings, cfg=cfg), items, workers)


def tune_caps(
    validation: Sequence[MarkedPattern],
    targets: dict[TargetKind, np.ndarray],
    settings: BankSettings,
    reconstruction: ReconstructionSettings,
    init: float,
    workers: int | None = None,
) -> tuple[dict[TargetKind, int], pd.DataFrame]:
    """Iteration cap per target kind minimizing validation RMSE, with the full RMSE curves.

    Returns:
        ``(caps, curve)`` where ``curve`` has columns ``cap, rmse, target``.
    """
    bank = cached_bank(settings)
    caps: dict[TargetKind, int] = {}
    frames = []
    for kind, rows in targets.items():
        items = [
            ValidationItem(mp.pattern, mp.marks, np.asarray(t, dtype=float))
            for mp, t in zip(validation, rows)
        ]
        base = reconstruction.solver_config(max(reconstruction.tune_caps), init)
        grid, rmse = iteration_cap_curve(items, bank, base, reconstruction.tune_caps, workers)
        caps[kind] = int(grid[int(np.argmin(rmse))])
        frames.append(pd.DataFrame({"cap": grid, "rmse": rmse, "target": kind}))
    logger.info("Iteration caps tuned", extra={f"cap_{k}": v for k, v in caps.items()})
    return caps, pd.concat(frames, ignore_index=True)

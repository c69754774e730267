"""Choice of the L-BFGS-B iteration cap on a validation set."""

from dataclasses import dataclass
from functools import partial
from typing import Optional, Sequence

import numpy as np

from geometry import PointPattern
from log import get_logger
from scattering import FilterBank
from utils.errors import GeomarkConfigError
from utils.pool import parallel_map

from .config import ReconstructionConfig
from .solver import ReconstructionResult, reconstruct_marks

logger = get_logger()


@dataclass(frozen=True)
class ValidationItem:
    """A pattern with its true marks and the moment target to reconstruct from."""

    pattern: PointPattern
    marks: np.ndarray
    target: np.ndarray
    initial: Optional[np.ndarray] = None


def _reconstruct_item(
    item: ValidationItem, bank: FilterBank, cfg: ReconstructionConfig
) -> ReconstructionResult:
    return reconstruct_marks(item.pattern, item.target, bank, cfg, item.initial)


def iteration_cap_curve(
    validation: Sequence[ValidationItem],
    bank: FilterBank,
    cfg: ReconstructionConfig,
    caps: Sequence[int],
    workers: Optional[int] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Pooled mark RMSE after each candidate number of iterations.

    Every pattern is reconstructed once with the largest cap; the iterate reached after
    ``c`` iterations stands for the run capped at ``c``.

    Returns:
        ``(caps, rmse)`` with caps sorted ascending.
    """
    if not validation:
        raise GeomarkConfigError("Iteration tuning needs a validation set")
    caps = np.unique(np.asarray(caps, dtype=int))
    if caps.size == 0 or caps[0] < 1:
        raise GeomarkConfigError("Iteration caps must be a nonempty list of integers >= 1")

    run_cfg = cfg.model_copy(update={"max_iterations": int(caps[-1])})
    results = parallel_map(partial(_reconstruct_item, bank=bank, cfg=run_cfg), validation, workers)
    truth = np.concatenate([item.marks for item in validation])
    rmse = np.empty(len(caps))
    for i, cap in enumerate(caps):
        estimate = np.concatenate([r.at_cap(int(cap)) for r in results])
        rmse[i] = np.sqrt(np.mean((estimate - truth) ** 2)) if truth.size else 0.0
    return caps, rmse


def tune_iteration_cap(
    validation: Sequence[ValidationItem],
    bank: FilterBank,
    cfg: ReconstructionConfig,
    caps: Sequence[int],
    workers: Optional[int] = None,
) -> int:
    """Cap with the smallest pooled validation RMSE (the smallest such cap on ties)."""
    caps, rmse = iteration_cap_curve(validation, bank, cfg, caps, workers)
    best = int(caps[int(np.argmin(rmse))])
    logger.info(
        "Iteration cap tuned",
        extra={"cap": best, "rmse": float(rmse.min()), "candidates": len(caps)},
    )
    return best

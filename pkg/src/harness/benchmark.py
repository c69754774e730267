"""Local distance-matrix benchmark runs and the neighbourhood-size sweep."""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import pandas as pd

from geometry import MarkedPattern
from log import get_logger
from marks import MarkModel
from regress import BaselineModel, fit_baseline, predict_baseline

from .experiment import ExperimentConfig
from .metrics import compute_metrics

logger = get_logger()


@dataclass(frozen=True)
class BaselineOutcome:
    """Fitted benchmark with its test predictions (``pattern, point, true, predicted``)."""

    model: BaselineModel
    predictions: pd.DataFrame = field(repr=False)
    skipped_train: int = 0
    skipped_test: int = 0


def baseline_predictions(
    model: BaselineModel, test: Sequence[MarkedPattern], max_points: int
) -> tuple[pd.DataFrame, int]:
    """Predictions for the first ``max_points`` test points; patterns smaller than K are skipped."""
    frames, skipped, taken = [], 0, 0
    for index, mp in enumerate(test):
        if taken >= max_points:
            break
        if len(mp) < model.k_neighbors:
            skipped += 1
            continue
        predicted = predict_baseline(model, mp.pattern)[: max_points - taken]
        frames.append(
            pd.DataFrame(
                {
                    "pattern": index,
                    "point": range(len(predicted)),
                    "true": mp.marks[: len(predicted)],
                    "predicted": predicted,
                }
            )
        )
        taken += len(predicted)
    columns = ["pattern", "point", "true", "predicted"]
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=columns)
    return frame, skipped


def run_baseline(
    cfg: ExperimentConfig,
    train: Sequence[MarkedPattern],
    test: Sequence[MarkedPattern],
    k: Optional[int] = None,
) -> Optional[BaselineOutcome]:
    """Fit the benchmark on training points and predict the test points.

    Returns ``None`` for the nearest-neighbour model, whose mark is one of the benchmark's
    own features, and when no K is configured.
    """
    k = k or cfg.baseline.k
    if cfg.mark is MarkModel.NEAREST_NEIGHBOR or k is None:
        logger.info(
            "Baseline skipped: the nearest-neighbour distance is itself a baseline feature",
            extra={"mark": cfg.mark.value},
        )
        return None

    model = fit_baseline(
        train,
        k,
        folds=cfg.ridge.folds,
        grid=cfg.ridge.grid,
        seed=cfg.seed,
        max_samples=cfg.baseline.max_samples,
        min_samples=cfg.baseline.min_samples,
    )
    predictions, skipped_test = baseline_predictions(model, test, cfg.baseline.max_test_points)
    skipped_train = sum(1 for mp in train if len(mp) < k)
    if skipped_test:
        logger.info("Skipped test patterns smaller than K", extra={"skipped": skipped_test, "K": k})
    return BaselineOutcome(model, predictions, skipped_train, skipped_test)


def sweep_baseline_k(
    cfg: ExperimentConfig,
    train: Sequence[MarkedPattern],
    test: Sequence[MarkedPattern],
    ks: Sequence[int],
) -> pd.DataFrame:
    """Benchmark metrics for every neighbourhood size in ``ks``.

    Returns:
        One row per K with columns ``mark, k, rmse, nrmse1, nrmse2, points``.
    """
    rows = []
    for k in ks:
        outcome = run_baseline(cfg, train, test, k)
        if outcome is None or outcome.predictions.empty:
            continue
        metrics = compute_metrics(outcome.predictions["true"], outcome.predictions["predicted"])
        rows.append(
            {
                "mark": cfg.mark.value,
                "k": k,
                "rmse": metrics.rmse,
                "nrmse1": metrics.nrmse1,
                "nrmse2": metrics.nrmse2,
                "points": len(outcome.predictions),
            }
        )
        logger.info("Baseline sweep point", extra={"K": k, "rmse": metrics.rmse})
    return pd.DataFrame(rows, columns=["mark", "k", "rmse", "nrmse1", "nrmse2", "points"])

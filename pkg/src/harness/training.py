"""Ridge regression stage: λ selection on part of the training set, fit on all of it."""

import math
from typing import Sequence

import numpy as np
import pandas as pd

from log import get_logger
from regress import RidgeModel, cross_validation_errors, fit_ridge, predict

from .experiment import RidgeSettings

logger = get_logger()


def train_regression(
    X: np.ndarray,
    Y: np.ndarray,
    settings: RidgeSettings,
    seed: int,
    feature_labels: Sequence[str],
    output_labels: Sequence[str],
) -> tuple[RidgeModel, np.ndarray, np.ndarray]:
    """Cross-validate λ per output on the leading ``cv_fraction`` of samples, then fit all.

    Returns:
        ``(model, grid, errors)`` where ``errors[g, p]`` is the mean validation MSE.
    """
    cv_rows = max(settings.folds, math.ceil(settings.cv_fraction * len(X)))
    grid, errors = cross_validation_errors(
        X[:cv_rows],
        Y[:cv_rows],
        folds=settings.folds,
        grid=settings.grid,
        seed=seed,
        standardize=settings.standardize,
    )
    lambdas = grid[np.argmin(errors, axis=0)]
    model = fit_ridge(
        X,
        Y,
        lambdas,
        standardize=settings.standardize,
        feature_labels=feature_labels,
        output_labels=output_labels,
    )
    logger.info(
        "Ridge regression fitted",
        extra={
            "samples": len(X),
            "cv_samples": cv_rows,
            "features": model.n_features,
            "outputs": model.n_outputs,
            "lambda_min": float(lambdas.min()),
            "lambda_max": float(lambdas.max()),
        },
    )
    return model, grid, errors


def relative_errors(model: RidgeModel, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Mean over patterns of ``|predicted_p - exact_p| / exact_p`` for every output ``p``.

    Patterns with a zero exact moment are left out of that output's mean; an output with
    no usable pattern gets NaN.
    """
    predicted = predict(model, X)
    exact = np.asarray(Y, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(exact != 0, np.abs(predicted - exact) / np.abs(exact), np.nan)
    counts = np.sum(~np.isnan(ratios), axis=0)
    sums = np.nansum(ratios, axis=0)
    return np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)


def regression_error_frame(
    model: RidgeModel, splits: dict[str, tuple[np.ndarray, np.ndarray]]
) -> pd.DataFrame:
    """Long table ``split, output, relative_error`` with one row per output and split."""
    frames = [
        pd.DataFrame(
            {
                "split": split,
                "output": list(model.output_labels),
                "relative_error": relative_errors(model, X, Y),
            }
        )
        for split, (X, Y) in splits.items()
    ]
    return pd.concat(frames, ignore_index=True)

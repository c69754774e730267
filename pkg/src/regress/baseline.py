"""Local distance-matrix benchmark: regress a point's mark on its neighbourhood geometry.

The neighbourhood of a centre is the centre plus its K - 1 nearest torus neighbours,
sorted by distance to the centre; the feature is the row-major off-diagonal part of their
K×K torus distance matrix, of dimension K(K - 1).
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from geometry import MarkedPattern, PointPattern, pairwise_torus_distances
from log import get_logger
from utils.errors import GeomarkConfigError, InsufficientDataError

from .ridge import DEFAULT_LAMBDA_GRID, RidgeModel, cross_validate_lambdas, fit_ridge, predict

logger = get_logger()


@dataclass(frozen=True)
class BaselineModel:
    """Single-output ridge model on K-point local distance features."""

    k_neighbors: int
    ridge: RidgeModel

    def __post_init__(self):
        if self.ridge.n_features != self.k_neighbors * (self.k_neighbors - 1):
            raise GeomarkConfigError("Baseline ridge must take K(K-1) features")


def _check_k(K: int) -> int:
    if K < 2:
        raise GeomarkConfigError("The neighbourhood needs K >= 2 points", K=K)
    return int(K)


def _neighbourhood_features(distances: np.ndarray, center: int, K: int) -> np.ndarray:
    order = np.argsort(distances[center], kind="stable")
    # distinct points are at positive distance, so the centre sorts first
    if order[0] != center:
        order = np.concatenate([[center], order[order != center]])
    members = order[:K]
    block = distances[np.ix_(members, members)]
    return block[~np.eye(K, dtype=bool)]


def local_distance_features(p: PointPattern, center_index: int, K: int) -> np.ndarray:
    """K(K-1) local distance features of point ``center_index``.

    Raises:
        InsufficientDataError: If the pattern has fewer than K points.
    """
    K = _check_k(K)
    if len(p) < K:
        raise InsufficientDataError("Pattern has fewer than K points", points=len(p), K=K)
    return _neighbourhood_features(pairwise_torus_distances(p), center_index, K)


def pattern_features(p: PointPattern, K: int) -> np.ndarray:
    """Local distance features of every point of ``p``, shape ``(len(p), K(K-1))``."""
    K = _check_k(K)
    if len(p) < K:
        raise InsufficientDataError("Pattern has fewer than K points", points=len(p), K=K)
    distances = pairwise_torus_distances(p)
    return np.stack([_neighbourhood_features(distances, i, K) for i in range(len(p))])


def point_samples(
    patterns: Iterable[MarkedPattern], K: int, max_samples: int
) -> tuple[np.ndarray, np.ndarray, int]:
    """Per-point samples ``(features, marks)`` from patterns in order, up to ``max_samples``.

    Patterns with fewer than K points contribute nothing; their count is returned third.
    """
    K = _check_k(K)
    features, marks = [], []
    taken = skipped = 0
    for mp in patterns:
        if taken >= max_samples:
            break
        if len(mp) < K:
            skipped += 1
            continue
        rows = pattern_features(mp.pattern, K)[: max_samples - taken]
        features.append(rows)
        marks.append(mp.marks[: len(rows)])
        taken += len(rows)
    if not features:
        return np.zeros((0, K * (K - 1))), np.zeros(0), skipped
    return np.concatenate(features), np.concatenate(marks), skipped


def fit_baseline(
    training: Sequence[MarkedPattern],
    K: int,
    folds: int = 5,
    grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    seed: int = 0,
    max_samples: int = 20_000,
    min_samples: int = 10,
) -> BaselineModel:
    """Fit the benchmark ridge regression with a cross-validated λ.

    Raises:
        InsufficientDataError: If fewer than ``max(min_samples, folds)`` samples are available.
    """
    X, y, skipped = point_samples(training, K, max_samples)
    if len(y) < max(min_samples, folds):
        raise InsufficientDataError(
            "Not enough points to fit the baseline", samples=len(y), K=K, skipped=skipped
        )
    if skipped:
        logger.info(
            "Skipped training patterns smaller than K",
            extra={"skipped_patterns": skipped, "K": K},
        )
    lambdas = cross_validate_lambdas(X, y, folds=folds, grid=grid, seed=seed)
    labels = [f"d{a},{b}" for a in range(K) for b in range(K) if a != b]
    ridge = fit_ridge(X, y, lambdas, feature_labels=labels, output_labels=["mark"])
    logger.info(
        "Baseline fitted",
        extra={"K": K, "samples": len(y), "lambda": float(lambdas[0])},
    )
    return BaselineModel(K, ridge)


def predict_baseline(model: BaselineModel, p: PointPattern) -> np.ndarray:
    """Predicted mark of every point of ``p``."""
    return predict(model.ridge, pattern_features(p, model.k_neighbors))[:, 0]

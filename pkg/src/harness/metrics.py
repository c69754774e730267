"""Reconstruction error metrics and the mark-swap diagnostic."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from geometry import PointPattern
from utils.errors import ShapeError


@dataclass(frozen=True)
class Metrics:
    """RMSE and its normalizations by the range and by the mean of the true marks.

    A normalized metric is ``None`` when its normalizer is zero.
    """

    rmse: float
    nrmse1: Optional[float]
    nrmse2: Optional[float]


def compute_metrics(true: np.ndarray, predicted: np.ndarray) -> Metrics:
    """Pooled RMSE, range-normalized RMSE and mean-normalized RMSE.

    Raises:
        ShapeError: If the vectors are empty or of different lengths.
    """
    true = np.asarray(true, dtype=float).ravel()
    predicted = np.asarray(predicted, dtype=float).ravel()
    if true.shape != predicted.shape or true.size == 0:
        raise ShapeError(
            "Metrics need two nonempty vectors of equal length",
            true=true.size,
            predicted=predicted.size,
        )
    rmse = float(np.sqrt(np.mean((true - predicted) ** 2)))
    spread = float(true.max() - true.min())
    mean = float(true.mean())
    return Metrics(
        rmse=rmse,
        nrmse1=rmse / spread if spread > 0 else None,
        nrmse2=rmse / mean if mean != 0 else None,
    )


def mutual_nearest_pairs(p: PointPattern) -> np.ndarray:
    """Pairs ``(i, j)``, ``i < j``, of points that are each other's torus nearest neighbour."""
    if len(p) < 2:
        return np.zeros((0, 2), dtype=int)
    _, neighbours = cKDTree(p.points, boxsize=p.side).query(p.points, k=2)
    nearest = neighbours[:, 1]
    index = np.arange(len(p))
    mutual = (nearest[nearest] == index) & (index < nearest)
    return np.column_stack([index[mutual], nearest[mutual]])


def swap_pairs(p: PointPattern, true: np.ndarray, reconstructed: np.ndarray) -> int:
    """Mutual nearest-neighbour pairs whose reconstructed marks are ordered against the truth."""
    true = np.asarray(true, dtype=float)
    reconstructed = np.asarray(reconstructed, dtype=float)
    pairs = mutual_nearest_pairs(p)
    if not len(pairs):
        return 0
    i, j = pairs[:, 0], pairs[:, 1]
    return int(np.sum((true[i] - true[j]) * (reconstructed[i] - reconstructed[j]) < 0))

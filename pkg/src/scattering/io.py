"""CSV persistence of scattering feature matrices (one row per pattern)."""

from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from utils.constants import FLOAT_FORMAT
from utils.errors import ShapeError


def write_feature_matrix(path: Path, matrix: np.ndarray, labels: Sequence[str]) -> Path:
    """Write a feature matrix with the index labels as header row."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.shape[1] != len(labels):
        raise ShapeError("Feature labels do not match columns", columns=matrix.shape[1])
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(matrix, columns=list(labels)).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def read_feature_matrix(path: Path) -> tuple[np.ndarray, list[str]]:
    """Read a feature matrix written by ``write_feature_matrix``."""
    frame = pd.read_csv(path, float_precision="round_trip")
    return frame.to_numpy(dtype=float), list(frame.columns)

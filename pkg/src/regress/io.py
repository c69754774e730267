"""JSON persistence of regression models and CSV cross-validation reports."""

from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError

from utils.constants import FLOAT_FORMAT
from utils.errors import GeomarkConfigError

from .baseline import BaselineModel
from .models import BaselineModelFile, RidgeModelFile, Standardization
from .ridge import RidgeModel


def ridge_to_file(model: RidgeModel) -> RidgeModelFile:
    """Serializable view of a ridge model."""
    return RidgeModelFile(
        feature_labels=list(model.feature_labels),
        output_labels=list(model.output_labels),
        lambdas=model.lambdas.tolist(),
        intercepts=model.intercepts.tolist(),
        coefficients=model.coefficients.ravel().tolist(),
        standardization=Standardization(
            means=model.feature_means.tolist(), stds=model.feature_scales.tolist()
        ),
    )


def ridge_from_file(record: RidgeModelFile) -> RidgeModel:
    """Rebuild a ridge model from its serialized view."""
    shape = (len(record.output_labels), len(record.feature_labels))
    return RidgeModel(
        coefficients=np.array(record.coefficients, dtype=float).reshape(shape),
        intercepts=np.array(record.intercepts, dtype=float),
        lambdas=np.array(record.lambdas, dtype=float),
        feature_means=np.array(record.standardization.means, dtype=float),
        feature_scales=np.array(record.standardization.stds, dtype=float),
        feature_labels=tuple(record.feature_labels),
        output_labels=tuple(record.output_labels),
    )


def _write_json(path: Path, record) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(record.model_dump_json(indent=2), encoding="utf-8")
    return path


def _read_json(path: Path, model_type):
    try:
        return model_type.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise GeomarkConfigError("Invalid model file", path=str(path), errors=e.error_count())


def save_ridge_model(path: Path, model: RidgeModel) -> Path:
    """Write a ridge model as JSON."""
    return _write_json(path, ridge_to_file(model))


def load_ridge_model(path: Path) -> RidgeModel:
    """Read a ridge model written by ``save_ridge_model``.

    Raises:
        GeomarkConfigError: If the file does not describe a valid model.
    """
    return ridge_from_file(_read_json(path, RidgeModelFile))


def save_baseline_model(path: Path, model: BaselineModel) -> Path:
    """Write a baseline model as JSON."""
    record = BaselineModelFile(k_neighbors=model.k_neighbors, ridge=ridge_to_file(model.ridge))
    return _write_json(path, record)


def load_baseline_model(path: Path) -> BaselineModel:
    """Read a baseline model written by ``save_baseline_model``."""
    record = _read_json(path, BaselineModelFile)
    return BaselineModel(record.k_neighbors, ridge_from_file(record.ridge))


def write_cv_report(
    path: Path, grid: np.ndarray, errors: np.ndarray, output_labels: Sequence[str]
) -> Path:
    """Write mean validation MSE per output and grid λ as long-format CSV."""
    grid = np.asarray(grid, dtype=float)
    errors = np.asarray(errors, dtype=float).reshape(len(grid), len(output_labels))
    frame = pd.DataFrame(
        {
            "output": np.repeat(list(output_labels), len(grid)),
            "lambda": np.tile(grid, len(output_labels)),
            "mse": errors.T.ravel(),
        }
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path

"""Ridge regression of marked moments and the local distance-matrix baseline."""

from .baseline import (
    BaselineModel,
    fit_baseline,
    local_distance_features,
    pattern_features,
    point_samples,
    predict_baseline,
)
from .io import (
    load_baseline_model,
    load_ridge_model,
    save_baseline_model,
    save_ridge_model,
    write_cv_report,
)
from .ridge import (
    DEFAULT_LAMBDA_GRID,
    RidgeModel,
    cross_validate_lambdas,
    cross_validation_errors,
    fit_ridge,
    fold_assignment,
    predict,
)

__all__ = [
    "BaselineModel",
    "DEFAULT_LAMBDA_GRID",
    "RidgeModel",
    "cross_validate_lambdas",
    "cross_validation_errors",
    "fit_baseline",
    "fold_assignment",
    "load_baseline_model",
    "load_ridge_model",
    "local_distance_features",
    "pattern_features",
    "point_samples",
    "predict",
    "predict_baseline",
    "save_baseline_model",
    "save_ridge_model",
    "write_cv_report",
]

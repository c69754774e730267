"""Per-output ridge regression with an unpenalized intercept and cross-validated λ.

Features are centred (and by default z-scored) on the training set; centring makes the
intercept decouple from the penalized coefficients, so for each output ``p``

    β(p) = (ZᵀZ + λ(p)·I)⁻¹ Zᵀ (Y(p) - mean Y(p)),   β₀(p) = mean Y(p)

in standardized coordinates. One eigendecomposition ``ZᵀZ = V·diag(s)·Vᵀ`` serves every λ.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import linalg

from log import get_logger
from utils.errors import GeomarkConfigError, ShapeError

logger = get_logger()

DEFAULT_LAMBDA_GRID = tuple(float(v) for v in np.logspace(-6, 6, 13))


@dataclass(frozen=True)
class RidgeModel:
    """Fitted affine map from feature vectors to output vectors.

    ``coefficients`` act on standardized features ``(x - feature_means) / feature_scales``.
    """

    coefficients: np.ndarray = field(repr=False)
    intercepts: np.ndarray = field(repr=False)
    lambdas: np.ndarray = field(repr=False)
    feature_means: np.ndarray = field(repr=False)
    feature_scales: np.ndarray = field(repr=False)
    feature_labels: tuple[str, ...] = ()
    output_labels: tuple[str, ...] = ()

    @property
    def n_features(self) -> int:
        """Feature dimension D."""
        return self.coefficients.shape[1]

    @property
    def n_outputs(self) -> int:
        """Output dimension P."""
        return self.coefficients.shape[0]

    def raw_coefficients(self) -> tuple[np.ndarray, np.ndarray]:
        """Coefficients and intercepts acting on unstandardized features."""
        coefficients = self.coefficients / self.feature_scales[None, :]
        intercepts = self.intercepts - coefficients @ self.feature_means
        return coefficients, intercepts


@dataclass(frozen=True)
class _Decomposition:
    """Centred/standardized training data in the eigenbasis of ZᵀZ."""

    means: np.ndarray
    scales: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    projected: np.ndarray
    y_means: np.ndarray

    def coefficients(self, lam: float) -> np.ndarray:
        """Standardized coefficient matrix ``(P, D)`` for one λ applied to every output."""
        s = self.eigenvalues
        if lam > 0:
            factors = 1.0 / (s + lam)
        else:
            tol = s.max(initial=0.0) * len(s) * np.finfo(float).eps
            if np.any(s <= tol):
                logger.warning(
                    "Ill-conditioned ridge system, solving with a pseudo-inverse",
                    extra={"rank": int(np.sum(s > tol)), "features": len(s)},
                )
            factors = np.where(s > tol, 1.0 / np.where(s > tol, s, 1.0), 0.0)
        return (self.eigenvectors @ (self.projected * factors[:, None])).T


def _as_2d(Y: np.ndarray) -> np.ndarray:
    Y = np.asarray(Y, dtype=float)
    return Y[:, None] if Y.ndim == 1 else Y


def _decompose(X: np.ndarray, Y: np.ndarray, standardize: bool) -> _Decomposition:
    means = X.mean(axis=0)
    scales = X.std(axis=0) if standardize else np.ones(X.shape[1])
    scales = np.where(scales > 0, scales, 1.0)
    Z = (X - means) / scales
    y_means = Y.mean(axis=0)
    eigenvalues, eigenvectors = linalg.eigh(Z.T @ Z)
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    projected = eigenvectors.T @ (Z.T @ (Y - y_means))
    return _Decomposition(means, scales, eigenvalues, eigenvectors, projected, y_means)


def _check_inputs(X, Y) -> tuple[np.ndarray, np.ndarray]:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = _as_2d(Y)
    if X.shape[0] != Y.shape[0]:
        raise ShapeError("Features and outputs need the same sample count", x=X.shape, y=Y.shape)
    if X.shape[0] < 1:
        raise ShapeError("Ridge regression needs at least one sample")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
        raise GeomarkConfigError("Ridge inputs must be finite")
    return X, Y


def fit_ridge(
    X: np.ndarray,
    Y: np.ndarray,
    lambdas,
    standardize: bool = True,
    feature_labels: Optional[Sequence[str]] = None,
    output_labels: Optional[Sequence[str]] = None,
) -> RidgeModel:
    """Fit one ridge regression per output column.

    Args:
        X: ``(n, D)`` features.
        Y: ``(n, P)`` outputs (or ``(n,)`` for one output).
        lambdas: One λ ≥ 0 per output, or a scalar shared by all.
        standardize: z-score features before fitting (centring always happens).
        feature_labels: Names of the D features.
        output_labels: Names of the P outputs.
    """
    X, Y = _check_inputs(X, Y)
    lambdas = np.broadcast_to(np.asarray(lambdas, dtype=float), (Y.shape[1],)).copy()
    if np.any(lambdas < 0):
        raise GeomarkConfigError("Ridge lambdas must be nonnegative")

    decomposition = _decompose(X, Y, standardize)
    coefficients = np.empty((Y.shape[1], X.shape[1]))
    for lam in np.unique(lambdas):
        outputs = lambdas == lam
        coefficients[outputs] = decomposition.coefficients(float(lam))[outputs]

    return RidgeModel(
        coefficients=coefficients,
        intercepts=decomposition.y_means.copy(),
        lambdas=lambdas,
        feature_means=decomposition.means,
        feature_scales=decomposition.scales,
        feature_labels=tuple(feature_labels or (f"x{i}" for i in range(X.shape[1]))),
        output_labels=tuple(output_labels or (f"y{p}" for p in range(Y.shape[1]))),
    )


def predict(model: RidgeModel, x: np.ndarray) -> np.ndarray:
    """Affine prediction for one feature vector ``(D,)`` or a batch ``(m, D)``."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != model.n_features or x.ndim > 2:
        raise ShapeError(
            "Feature dimension does not match the model",
            expected=model.n_features,
            got=x.shape,
        )
    z = (x - model.feature_means) / model.feature_scales
    return z @ model.coefficients.T + model.intercepts


def fold_assignment(n: int, folds: int, seed: int) -> list[np.ndarray]:
    """Split sample indices into ``folds`` disjoint validation sets covering every index."""
    if folds < 2:
        raise GeomarkConfigError("Cross-validation needs at least 2 folds", folds=folds)
    if n < folds:
        raise GeomarkConfigError("Fewer samples than folds", samples=n, folds=folds)
    order = np.random.default_rng(seed).permutation(n)
    return [np.sort(part) for part in np.array_split(order, folds)]


def cross_validation_errors(
    X: np.ndarray,
    Y: np.ndarray,
    folds: int = 5,
    grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    seed: int = 0,
    standardize: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Mean validation MSE for every grid λ and output, shape ``(len(grid), P)``.

    One fold partition is shared by all outputs.
    """
    X, Y = _check_inputs(X, Y)
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise GeomarkConfigError("The λ grid is empty")
    if np.any(grid < 0):
        raise GeomarkConfigError("The λ grid must be nonnegative")

    errors = np.zeros((grid.size, Y.shape[1]))
    partition = fold_assignment(X.shape[0], folds, seed)
    for validation in partition:
        train = np.setdiff1d(np.arange(X.shape[0]), validation, assume_unique=True)
        decomposition = _decompose(X[train], Y[train], standardize)
        Z = (X[validation] - decomposition.means) / decomposition.scales
        for g, lam in enumerate(grid):
            prediction = Z @ decomposition.coefficients(float(lam)).T + decomposition.y_means
            errors[g] += np.mean((prediction - Y[validation]) ** 2, axis=0)
    return grid, errors / len(partition)


def cross_validate_lambdas(
    X: np.ndarray,
    Y: np.ndarray,
    folds: int = 5,
    grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    seed: int = 0,
    standardize: bool = True,
) -> np.ndarray:
    """Per output, the grid λ with the smallest mean validation squared error."""
    grid, errors = cross_validation_errors(X, Y, folds, grid, seed, standardize)
    return grid[np.argmin(errors, axis=0)]

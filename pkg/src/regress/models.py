"""Pydantic models for persisted regression models."""

from pydantic import BaseModel, Field, model_validator


class Standardization(BaseModel):
    """Per-feature centring and scaling applied before the linear map."""

    means: list[float]
    stds: list[float]


class RidgeModelFile(BaseModel):
    """JSON layout of a fitted ridge model; ``coefficients`` is row-major, one row per output."""

    feature_labels: list[str]
    output_labels: list[str]
    lambdas: list[float] = Field(..., description="Penalty per output")
    intercepts: list[float]
    coefficients: list[float] = Field(..., description="Row-major P×D matrix")
    standardization: Standardization

    @model_validator(mode="after")
    def _check_dimensions(self) -> "RidgeModelFile":
        n_features, n_outputs = len(self.feature_labels), len(self.output_labels)
        if len(self.coefficients) != n_features * n_outputs:
            raise ValueError("coefficients must have one row of D values per output")
        if len(self.lambdas) != n_outputs or len(self.intercepts) != n_outputs:
            raise ValueError("lambdas and intercepts need one value per output")
        if len(self.standardization.means) != n_features:
            raise ValueError("standardization means need one value per feature")
        if len(self.standardization.stds) != n_features:
            raise ValueError("standardization stds need one value per feature")
        if any(lam < 0 for lam in self.lambdas):
            raise ValueError("lambdas must be nonnegative")
        return self


class BaselineModelFile(BaseModel):
    """JSON layout of a fitted local distance-matrix baseline."""

    k_neighbors: int = Field(..., ge=2)
    ridge: RidgeModelFile

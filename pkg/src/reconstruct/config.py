"""Settings of the bounded quasi-Newton mark reconstruction."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class ReconstructionConfig(BaseModel):
    """Iteration cap, smoothing and initialization of one reconstruction run.

    With ``init="training_mean"`` the caller sets ``init_value`` to the mean training mark;
    ``init="constant"`` uses ``init_value`` as given.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_iterations: int = Field(30, ge=1, description="L-BFGS-B iteration cap")
    eps: float = Field(1e-12, gt=0, description="Modulus smoothing floor")
    lower_bound: float = Field(0.0, description="Lower bound of every mark")
    init: Literal["training_mean", "constant"] = "training_mean"
    init_value: float = Field(1.0, ge=0, description="Constant starting mark")
    memory: int = Field(10, ge=1, description="Quasi-Newton history length")
    gradient_tolerance: float = Field(1e-12, ge=0, description="Projected gradient threshold")

"""Pydantic models for the reconstruction report."""

from pydantic import BaseModel, Field


class ReconstructedPoint(BaseModel):
    """One point's true (if known) and reconstructed mark."""

    true: float | None = None
    reconstructed: float


class ReconstructionRecord(BaseModel):
    """One NDJSON line of the reconstruction report."""

    pattern: int = Field(..., ge=0, description="Index of the pattern in its split")
    target: str = Field(..., description="Moment source: estimated or exact")
    objective: float
    iterations: int = Field(..., ge=0)
    points: list[ReconstructedPoint]

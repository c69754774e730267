"""Pydantic models for the NDJSON pattern records."""

from pydantic import BaseModel, Field


class PatternRecord(BaseModel):
    """One serialized (marked) point pattern."""

    side: float = Field(..., gt=0, description="Side of the square torus window")
    points: list[tuple[float, float]] = Field(
        default_factory=list, description="Point coordinates in generation order"
    )
    marks: list[float] | None = Field(
        None, description="Marks aligned with points by index, if the pattern is marked"
    )

"""Evaluation report of one run and its metrics-file layout."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from geometry import MarkedPattern

from .metrics import Metrics, compute_metrics, swap_pairs


class MethodMetrics(BaseModel):
    """Metrics of one prediction method over the pooled test points."""

    rmse: float
    nrmse1: Optional[float] = Field(None, description="RMSE over the range of true marks")
    nrmse2: Optional[float] = Field(None, description="RMSE over the mean of true marks")
    points: int
    swap_pairs: Optional[int] = Field(
        None, description="Mutual nearest pairs with reversed mark order"
    )


class MetricsFile(BaseModel):
    """Layout of ``metrics.json``."""

    mark: str
    methods: dict[str, MethodMetrics]
    baseline_k: Optional[int] = None
    baseline_skipped_patterns: dict[str, int] = Field(default_factory=dict)
    iteration_caps: dict[str, int] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)
    trace: dict[str, Optional[str]] = Field(
        default_factory=dict, description="trace_id and span_id of the evaluation stage"
    )


@dataclass(frozen=True)
class MethodResult:
    """Pooled true and predicted marks of one method."""

    true: np.ndarray = field(repr=False)
    predicted: np.ndarray = field(repr=False)
    metrics: Metrics
    swap_pairs: Optional[int] = None


def method_result(
    true: np.ndarray,
    predicted: np.ndarray,
    patterns: Optional[list[MarkedPattern]] = None,
    per_pattern: Optional[list[np.ndarray]] = None,
) -> MethodResult:
    """Metrics of one method; the swap count needs the patterns and per-pattern predictions."""
    swaps = None
    if patterns is not None and per_pattern is not None:
        swaps = sum(
            swap_pairs(mp.pattern, mp.marks, marks) for mp, marks in zip(patterns, per_pattern)
        )
    return MethodResult(
        np.asarray(true, dtype=float),
        np.asarray(predicted, dtype=float),
        compute_metrics(true, predicted),
        swaps,
    )


@dataclass
class EvaluationReport:
    """Everything exported at the end of a run."""

    mark: str
    methods: dict[str, MethodResult] = field(default_factory=dict)
    profiles: Optional[pd.DataFrame] = field(default=None, repr=False)
    regression_errors: Optional[pd.DataFrame] = field(default=None, repr=False)
    iteration_curve: Optional[pd.DataFrame] = field(default=None, repr=False)
    baseline_k: Optional[int] = None
    baseline_skipped: dict[str, int] = field(default_factory=dict)
    iteration_caps: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    trace: dict[str, Optional[str]] = field(default_factory=dict)

    def metrics_file(self) -> MetricsFile:
        """Serializable metrics summary."""
        return MetricsFile(
            mark=self.mark,
            methods={
                name: MethodMetrics(
                    rmse=result.metrics.rmse,
                    nrmse1=result.metrics.nrmse1,
                    nrmse2=result.metrics.nrmse2,
                    points=len(result.true),
                    swap_pairs=result.swap_pairs,
                )
                for name, result in self.methods.items()
            },
            baseline_k=self.baseline_k,
            baseline_skipped_patterns=self.baseline_skipped,
            iteration_caps=self.iteration_caps,
            notes=self.notes,
            trace=self.trace,
        )

    def qq_frame(self) -> pd.DataFrame:
        """Long table ``true, predicted, method`` over every method's test points."""
        frames = [
            pd.DataFrame({"true": r.true, "predicted": r.predicted, "method": name})
            for name, r in self.methods.items()
        ]
        if not frames:
            return pd.DataFrame(columns=["true", "predicted", "method"])
        return pd.concat(frames, ignore_index=True)


def profile_frame(
    patterns: list[MarkedPattern], reconstructions: dict[str, list[np.ndarray]]
) -> pd.DataFrame:
    """Per-pattern mark profiles with points numbered in lexicographic order of (x, y).

    Columns: ``pattern, index, x, y, true, reconstructed, method``.
    """
    frames = []
    for method, per_pattern in reconstructions.items():
        for pattern_id, (mp, marks) in enumerate(zip(patterns, per_pattern)):
            order = np.lexsort((mp.points[:, 1], mp.points[:, 0]))
            frames.append(
                pd.DataFrame(
                    {
                        "pattern": pattern_id,
                        "index": np.arange(len(order)),
                        "x": mp.points[order, 0],
                        "y": mp.points[order, 1],
                        "true": mp.marks[order],
                        "reconstructed": np.asarray(marks)[order],
                        "method": method,
                    }
                )
            )
    columns = ["pattern", "index", "x", "y", "true", "reconstructed", "method"]
    return pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=columns)

"""NDJSON reconstruction reports."""

from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .models import ReconstructedPoint, ReconstructionRecord
from .solver import ReconstructionResult


def reconstruction_record(
    index: int,
    result: ReconstructionResult,
    target: str,
    true_marks: Optional[np.ndarray] = None,
) -> ReconstructionRecord:
    """Report line of one reconstructed pattern."""
    truths = [None] * len(result.marks) if true_marks is None else list(map(float, true_marks))
    return ReconstructionRecord(
        pattern=index,
        target=target,
        objective=result.objective,
        iterations=result.iterations,
        points=[
            ReconstructedPoint(true=t, reconstructed=float(m))
            for t, m in zip(truths, result.marks, strict=True)
        ],
    )


def write_reconstruction_report(path: Path, records: Iterable[ReconstructionRecord]) -> int:
    """Write report records one per line, returning the number written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for record in records:
            f.write(record.model_dump_json() + "\n")
            count += 1
    return count


def read_reconstruction_report(path: Path) -> list[ReconstructionRecord]:
    """Read a report written by ``write_reconstruction_report``."""
    with Path(path).open("r", encoding="utf-8") as f:
        return [ReconstructionRecord.model_validate_json(line) for line in f if line.strip()]

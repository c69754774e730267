"""NDJSON persistence of point patterns: one JSON object per line."""

from pathlib import Path
from typing import Iterable, Union

import numpy as np

from utils.constants import FLOAT_DIGITS
from utils.errors import DomainError

from .models import PatternRecord
from .patterns import MarkedPattern, PointPattern, TorusWindow

AnyPattern = Union[PointPattern, MarkedPattern]


def _num(x: float) -> str:
    return format(float(x), f".{FLOAT_DIGITS}g")


def pattern_to_line(p: AnyPattern) -> str:
    """Serialize a pattern as one NDJSON line with 17 significant digits per number."""
    pattern = p.pattern if isinstance(p, MarkedPattern) else p
    points = ",".join(f"[{_num(x)},{_num(y)}]" for x, y in pattern.points)
    line = f'{{"side":{_num(pattern.side)},"points":[{points}]'
    if isinstance(p, MarkedPattern):
        line += ',"marks":[' + ",".join(_num(m) for m in p.marks) + "]"
    return line + "}"


def pattern_from_line(line: str) -> AnyPattern:
    """Parse one NDJSON line into a point or marked pattern."""
    record = PatternRecord.model_validate_json(line)
    pattern = PointPattern(TorusWindow(record.side), np.array(record.points, dtype=float))
    if record.marks is None:
        return pattern
    return pattern.with_marks(record.marks)


def write_patterns(path: Path, patterns: Iterable[AnyPattern]) -> int:
    """Write patterns to an NDJSON file, returning the number written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for p in patterns:
            f.write(pattern_to_line(p) + "\n")
            count += 1
    return count


def read_patterns(path: Path) -> list[AnyPattern]:
    """Read every pattern of an NDJSON file, in file order."""
    patterns = []
    with Path(path).open("r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                patterns.append(pattern_from_line(line))
            except DomainError as e:
                raise e.with_context(path=str(path), line=lineno)
    return patterns

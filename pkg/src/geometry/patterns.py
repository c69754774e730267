"""Torus window and (marked) point pattern value types."""

from dataclasses import dataclass, field

import numpy as np

from utils.errors import DomainError, ShapeError


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class TorusWindow:
    """Square window ``[0, side)²`` with opposite edges identified."""

    side: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.side) or self.side <= 0:
            raise DomainError("Window side must be a positive finite length", side=self.side)

    @property
    def area(self) -> float:
        """Area of the window."""
        return self.side * self.side

    def wrap(self, points: np.ndarray) -> np.ndarray:
        """Reduce coordinates to the canonical range ``[0, side)``."""
        wrapped = np.mod(np.asarray(points, dtype=float), self.side)
        # np.mod can round tiny negative values up to side itself
        wrapped[wrapped >= self.side] = 0.0
        return wrapped

    def contains(self, points: np.ndarray) -> bool:
        """Whether all coordinates already lie in ``[0, side)``."""
        points = np.asarray(points, dtype=float)
        return bool(np.all((points >= 0.0) & (points < self.side)))


@dataclass(frozen=True)
class PointPattern:
    """Finite simple point set on a torus window.

    Points keep their generation order; marks and pixels align with it by index.
    """

    window: TorusWindow
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        points = np.array(self.points, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(points)):
            raise DomainError("Point coordinates must be finite")
        if not self.window.contains(points):
            raise DomainError(
                "Point coordinates must lie in [0, side)", side=self.window.side
            )
        if len(points) > 1 and len(np.unique(points, axis=0)) != len(points):
            raise DomainError("Point pattern is not simple: duplicate points")
        object.__setattr__(self, "points", _frozen(points))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def side(self) -> float:
        """Side of the window."""
        return self.window.side

    def with_marks(self, marks) -> "MarkedPattern":
        """Attach marks aligned with the point order."""
        return MarkedPattern(self, np.asarray(marks, dtype=float))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointPattern):
            return NotImplemented
        return self.window == other.window and np.array_equal(self.points, other.points)


@dataclass(frozen=True)
class MarkedPattern:
    """Point pattern with one finite real mark per point."""

    pattern: PointPattern
    marks: np.ndarray = field(repr=False)

    def __post_init__(self):
        marks = np.array(self.marks, dtype=float).reshape(-1)
        if len(marks) != len(self.pattern):
            raise ShapeError(
                "Marks must align with points",
                points=len(self.pattern),
                marks=len(marks),
            )
        if not np.all(np.isfinite(marks)):
            raise DomainError("Marks must be finite reals")
        object.__setattr__(self, "marks", _frozen(marks))

    def __len__(self) -> int:
        return len(self.pattern)

    @property
    def points(self) -> np.ndarray:
        """Point coordinates of the underlying pattern."""
        return self.pattern.points

    @property
    def window(self) -> TorusWindow:
        """Window of the underlying pattern."""
        return self.pattern.window

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedPattern):
            return NotImplemented
        return self.pattern == other.pattern and np.array_equal(self.marks, other.marks)

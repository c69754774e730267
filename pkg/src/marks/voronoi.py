"""Voronoi tessellation of the torus and the cell-based marks (area, moment of inertia).

The periodic tessellation is read off an ordinary planar diagram of the 3×3 periodic
replication of the pattern: the cell of each centre copy is the torus cell, expressed in
the generator's local chart (vertices may leave the window).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import QhullError, Voronoi

from geometry import MarkedPattern, PointPattern
from log import get_logger
from utils.errors import DomainError, NumericalError

logger = get_logger()

AREA_TOLERANCE = 1e-9


@dataclass(frozen=True)
class VoronoiTessellation:
    """Per-point convex cells of a torus Voronoi tessellation.

    ``cells[i]`` holds the vertices of the cell generated by ``generators[i]``,
    counter-clockwise, in absolute coordinates of the generator's chart.
    """

    side: float
    generators: np.ndarray = field(repr=False)
    cells: tuple[np.ndarray, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.cells)

    def areas(self) -> np.ndarray:
        """Cell areas by the shoelace formula."""
        return np.array([_polygon_area(c - g) for g, c in zip(self.generators, self.cells)])

    def inertias(self) -> np.ndarray:
        """Second moments ``∫_{V_i} |y - x_i|² dy`` of the cells about their generators."""
        return np.array([_polar_moment(c - g) for g, c in zip(self.generators, self.cells)])


def _polygon_area(rel: np.ndarray) -> float:
    x, y = rel[:, 0], rel[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _polar_moment(rel: np.ndarray) -> float:
    # fan of triangles (0, a, b): ∫|y|² = A/6 · (|a|² + |b|² + a·b)
    a = rel
    b = np.roll(rel, -1, axis=0)
    twice_area = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    second = np.sum(a * a, axis=1) + np.sum(b * b, axis=1) + np.sum(a * b, axis=1)
    return float(np.sum(twice_area * second) / 12.0)


def _counter_clockwise(vertices: np.ndarray, center: np.ndarray) -> np.ndarray:
    angles = np.arctan2(vertices[:, 1] - center[1], vertices[:, 0] - center[0])
    return vertices[np.argsort(angles, kind="stable")]


def _replicate(points: np.ndarray, side: float, reach: int) -> np.ndarray:
    shifts = [(0, 0)] + [
        (dx, dy)
        for dx in range(-reach, reach + 1)
        for dy in range(-reach, reach + 1)
        if (dx, dy) != (0, 0)
    ]
    offsets = np.array(shifts, dtype=float) * side
    # centre copies come first, so generator i keeps index i
    return (offsets[:, None, :] + points[None, :, :]).reshape(-1, 2)


def _tessellate(points: np.ndarray, side: float, reach: int) -> tuple[np.ndarray, ...]:
    try:
        diagram = Voronoi(_replicate(points, side, reach))
    except QhullError as e:
        raise NumericalError("Qhull failed to tessellate the pattern", error=str(e)) from e

    cells = []
    for i, generator in enumerate(points):
        region = diagram.regions[diagram.point_region[i]]
        if not region or -1 in region:
            raise NumericalError("Unbounded Voronoi cell for a centre copy", point=i)
        cells.append(_counter_clockwise(diagram.vertices[region], generator))
    return tuple(cells)


def voronoi_tessellation(p: PointPattern) -> VoronoiTessellation:
    """Tessellate the torus by the points of ``p``.

    Raises:
        DomainError: For an empty pattern.
    """
    if len(p) == 0:
        raise DomainError("Voronoi tessellation needs at least one point")

    side = p.side
    points = p.points
    if len(p) == 1:
        half = side / 2.0
        corners = np.array([[-half, -half], [half, -half], [half, half], [-half, half]])
        return VoronoiTessellation(side, points, (points[0] + corners,))

    cells = _tessellate(points, side, reach=1)
    tessellation = VoronoiTessellation(side, points, cells)
    total = float(np.sum(tessellation.areas()))
    if abs(total - side * side) > AREA_TOLERANCE * side * side:
        # very sparse patterns can have cells reaching past the first ring of copies
        logger.debug(
            "Widening periodic replication for Voronoi cells",
            extra={"points": len(p), "area_sum": total},
        )
        tessellation = VoronoiTessellation(side, points, _tessellate(points, side, reach=2))
    return tessellation


def voronoi_area_marks(p: PointPattern) -> MarkedPattern:
    """Mark each point with the area of its torus Voronoi cell."""
    return p.with_marks(voronoi_tessellation(p).areas())


def voronoi_inertia_marks(p: PointPattern) -> MarkedPattern:
    """Mark each point with the moment of inertia of its cell about the point."""
    return p.with_marks(voronoi_tessellation(p).inertias())

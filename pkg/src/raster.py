"""Dirac binning of (marked) point patterns into N×N pixel grids."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from geometry import MarkedPattern, PointPattern
from utils.constants import FLOAT_FORMAT
from utils.errors import CollisionError, GeomarkConfigError

DEFAULT_GRID = 128


@dataclass(frozen=True)
class RasterImage:
    """Real ``n × n`` grid; row index from x, column index from y."""

    n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_grid_size(self.n)
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.n, self.n):
            raise GeomarkConfigError("Raster values must be n×n", shape=values.shape, n=self.n)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def check_grid_size(n: int) -> int:
    """Validate that ``n`` is a power of two no smaller than 16."""
    if not isinstance(n, (int, np.integer)) or n < 16 or n & (n - 1):
        raise GeomarkConfigError("Raster size must be a power of two >= 16", n=n)
    return int(n)


def pixel_indices(p: PointPattern, n: int) -> np.ndarray:
    """Pixel ``(⌊x·n/side⌋, ⌊y·n/side⌋)`` of every point, as an ``(len(p), 2)`` int array.

    Raises:
        CollisionError: If two points share a pixel.
    """
    check_grid_size(n)
    pixels = np.floor(p.points * (n / p.side)).astype(np.int64)
    np.clip(pixels, 0, n - 1, out=pixels)
    flat = pixels[:, 0] * n + pixels[:, 1]
    unique, counts = np.unique(flat, return_counts=True)
    if np.any(counts > 1):
        clash = int(unique[np.argmax(counts > 1)])
        raise CollisionError(
            "Two points fall in the same pixel", pixel=(clash // n, clash % n), n=n
        )
    return pixels


def has_collision(p: PointPattern, n: int) -> bool:
    """Whether rasterizing ``p`` at size ``n`` would put two points in one pixel."""
    try:
        pixel_indices(p, n)
    except CollisionError:
        return True
    return False


def rasterize(mp: Union[MarkedPattern, PointPattern], n: int = DEFAULT_GRID) -> RasterImage:
    """Put each point's mark in its pixel; unmarked patterns get unit marks."""
    if isinstance(mp, MarkedPattern):
        pattern, marks = mp.pattern, mp.marks
    else:
        pattern, marks = mp, np.ones(len(mp))
    return RasterImage(n, image_from_marks(marks, pixel_indices(pattern, n), n))


def image_from_marks(marks: np.ndarray, pixels: np.ndarray, n: int) -> np.ndarray:
    """Dense ``n × n`` array with ``marks`` at the given pixels."""
    values = np.zeros((n, n))
    values[pixels[:, 0], pixels[:, 1]] = marks
    return values


def write_raster_csv(img: RasterImage, path: Path) -> Path:
    """Dump the nonzero pixels of ``img`` as ``row,col,value`` CSV."""
    rows, cols = np.nonzero(img.values)
    frame = pd.DataFrame({"row": rows, "col": cols, "value": img.values[rows, cols]})
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path

"""Shared fixtures: small filter banks, seeded generators and collision-free patterns."""

import logging

import numpy as np
import pytest

from geometry import PointPattern, TorusWindow
from log import get_logger
from raster import has_collision
from scattering import build_filter_bank


@pytest.fixture(scope="session")
def bank32():
    """32×32 bank with scales 0..4 and 8 angles (33 first-order moments)."""
    return build_filter_bank(n=32, j_min=0, j_max=4, angles=8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pattern(rng, count: int, n: int = 32, side: float = 1.0) -> PointPattern:
    """Uniform pattern of ``count`` points with no two points in one ``n×n`` pixel."""
    window = TorusWindow(side)
    while True:
        pattern = PointPattern(window, rng.uniform(0.0, side, size=(count, 2)))
        if not has_collision(pattern, n):
            return pattern


@pytest.fixture
def ten_points(rng):
    return random_pattern(rng, 10)


class RecordCollector(logging.Handler):
    """Keeps every record emitted on the geomark logger."""

    def __init__(self):
        super().__init__(level=logging.DEBUG)
        self.records: list[logging.LogRecord] = []

    def emit(self, record: logging.LogRecord):
        self.records.append(record)

    def messages(self) -> list[str]:
        return [r.getMessage() for r in self.records]


@pytest.fixture
def log_records():
    logger = get_logger()
    collector = RecordCollector()
    logger.addHandler(collector)
    yield collector
    logger.removeHandler(collector)

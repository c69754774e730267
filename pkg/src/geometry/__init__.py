"""Square torus window, toroidal metric and Poisson point-pattern simulation."""

from .io import pattern_from_line, pattern_to_line, read_patterns, write_patterns
from .patterns import MarkedPattern, PointPattern, TorusWindow
from .poisson import make_rng, sample_poisson, spawn_seeds
from .torus import pairwise_torus_distances, torus_distance, translate

__all__ = [
    "MarkedPattern",
    "PointPattern",
    "TorusWindow",
    "make_rng",
    "pairwise_torus_distances",
    "pattern_from_line",
    "pattern_to_line",
    "read_patterns",
    "sample_poisson",
    "spawn_seeds",
    "torus_distance",
    "translate",
    "write_patterns",
]

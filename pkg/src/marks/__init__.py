"""Geometric marking functions of point patterns on the torus."""

from .nearest import nearest_neighbor_marks
from .registry import MarkModel, compute_marks
from .response import ResponseFunction, ResponseKind, response_eval
from .shot_noise import interaction_matrix, shot_noise_marks, voronoi_shot_noise_marks
from .voronoi import (
    VoronoiTessellation,
    voronoi_area_marks,
    voronoi_inertia_marks,
    voronoi_tessellation,
)

__all__ = [
    "MarkModel",
    "ResponseFunction",
    "ResponseKind",
    "VoronoiTessellation",
    "compute_marks",
    "interaction_matrix",
    "nearest_neighbor_marks",
    "response_eval",
    "shot_noise_marks",
    "voronoi_area_marks",
    "voronoi_inertia_marks",
    "voronoi_shot_noise_marks",
    "voronoi_tessellation",
]

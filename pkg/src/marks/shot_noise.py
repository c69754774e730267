"""Shot-noise marks: total response received from the other points."""

import numpy as np

from geometry import MarkedPattern, PointPattern, pairwise_torus_distances
from utils.errors import DomainError, InsufficientDataError

from .response import ResponseFunction, response_eval
from .voronoi import voronoi_area_marks


def interaction_matrix(p: PointPattern, resp: ResponseFunction) -> np.ndarray:
    """Matrix ``L[i, j] = ℓ(d(x_i, x_j))`` for ``i ≠ j`` with a zero diagonal.

    Raises:
        DomainError: If two distinct points are at torus distance zero.
    """
    distances = pairwise_torus_distances(p)
    off_diagonal = ~np.eye(len(p), dtype=bool)
    if np.any(distances[off_diagonal] <= 0):
        raise DomainError("Shot-noise marks need distinct points")
    np.fill_diagonal(distances, 1.0)
    response = np.asarray(response_eval(resp, distances), dtype=float).reshape(len(p), len(p))
    np.fill_diagonal(response, 0.0)
    return response


def _row_sums(matrix: np.ndarray) -> np.ndarray:
    # sorted summation makes the result independent of the point order
    return np.sort(matrix, axis=1).sum(axis=1)


def shot_noise_marks(p: PointPattern, resp: ResponseFunction) -> MarkedPattern:
    """Mark each point with ``Σ_{j≠i} ℓ(d(x_i, x_j))``."""
    if len(p) == 0:
        return p.with_marks(np.zeros(0))
    return p.with_marks(_row_sums(interaction_matrix(p, resp)))


def voronoi_shot_noise_marks(p: PointPattern, resp: ResponseFunction) -> MarkedPattern:
    """Mark each point with ``Σ_{j≠i} ℓ(d(x_i, x_j))·A_j``, ``A_j`` the Voronoi cell areas."""
    if len(p) < 2:
        raise InsufficientDataError(
            "Voronoi shot-noise marks need at least 2 points", points=len(p)
        )
    areas = voronoi_area_marks(p).marks
    return p.with_marks(_row_sums(interaction_matrix(p, resp) * areas[None, :]))

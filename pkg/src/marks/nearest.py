"""Distance to the nearest neighbour on the torus."""

from scipy.spatial import cKDTree

from geometry import MarkedPattern, PointPattern
from utils.errors import InsufficientDataError


def nearest_neighbor_marks(p: PointPattern) -> MarkedPattern:
    """Mark each point with the torus distance to its nearest other point.

    Raises:
        InsufficientDataError: With fewer than two points.
    """
    if len(p) < 2:
        raise InsufficientDataError("Nearest-neighbour marks need at least 2 points", points=len(p))
    tree = cKDTree(p.points, boxsize=p.side)
    distances, _ = tree.query(p.points, k=2)
    return p.with_marks(distances[:, 1])

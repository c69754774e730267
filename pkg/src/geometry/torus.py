"""Toroidal metric and translations."""

import numpy as np

from utils.errors import DomainError

from .patterns import PointPattern, TorusWindow


def torus_distance(a, b, w: TorusWindow) -> float:
    """Distance between two points of the window seen as a torus.

    Equal to the minimum of ``|a - b|`` over the nine periodic translates of ``b``.

    Raises:
        DomainError: If a coordinate lies outside ``[0, side)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (w.contains(a) and w.contains(b)):
        raise DomainError("Points must lie in the window", a=a.tolist(), b=b.tolist())
    delta = np.abs(a - b)
    delta = np.minimum(delta, w.side - delta)
    return float(np.hypot(delta[0], delta[1]))


def pairwise_torus_distances(pattern: PointPattern) -> np.ndarray:
    """Matrix of torus distances between all points of a pattern."""
    points = pattern.points
    delta = np.abs(points[:, None, :] - points[None, :, :])
    delta = np.minimum(delta, pattern.side - delta)
    return np.hypot(delta[..., 0], delta[..., 1])


def translate(p: PointPattern, v) -> PointPattern:
    """Shift every point by ``v`` modulo the torus, keeping count and order."""
    v = np.asarray(v, dtype=float).reshape(2)
    return PointPattern(p.window, p.window.wrap(p.points + v))

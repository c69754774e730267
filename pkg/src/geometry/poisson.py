"""Homogeneous Poisson point process on the torus window."""

import numpy as np

from utils.errors import DomainError

from .patterns import PointPattern, TorusWindow


def make_rng(seed) -> np.random.Generator:
    """Build a PCG64 generator from an integer seed or a ``SeedSequence``."""
    return np.random.default_rng(seed)


def spawn_seeds(seed: int, count: int, stream: int = 0) -> list[np.random.SeedSequence]:
    """Split one integer seed into ``count`` independent child sequences.

    ``stream`` separates families of draws (train and test splits) derived from one seed.
    """
    return np.random.SeedSequence(entropy=seed, spawn_key=(stream,)).spawn(count)


def sample_poisson(intensity: float, w: TorusWindow, seed) -> PointPattern:
    """Sample a Poisson pattern: Poisson(intensity·side²) points, i.i.d. uniform coordinates.

    Args:
        intensity: Mean number of points per unit area.
        w: Observation window.
        seed: Integer seed or ``SeedSequence``; equal seeds give equal patterns.

    Raises:
        DomainError: If the intensity is not positive.
    """
    if not np.isfinite(intensity) or intensity <= 0:
        raise DomainError("Intensity must be positive", intensity=intensity)
    rng = make_rng(seed)
    count = rng.poisson(intensity * w.area)
    points = rng.uniform(0.0, w.side, size=(count, 2))
    return PointPattern(w, w.wrap(points))

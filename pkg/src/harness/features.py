"""Scattering features of a dataset: unmarked joint moments and marked first-order moments."""

from functools import lru_cache, partial

import numpy as np

from geometry import MarkedPattern
from raster import rasterize
from scattering import FilterBank, first_order_moments, scattering_features
from utils.errors import GeomarkError
from utils.pool import parallel_map

from .experiment import BankSettings


@lru_cache(maxsize=4)
def cached_bank(settings: BankSettings) -> FilterBank:
    """Filter bank for ``settings``, built once per process."""
    return settings.build()


def _scatter_one(item: tuple[int, MarkedPattern], settings: BankSettings):
    index, mp = item
    bank = cached_bank(settings)
    try:
        unmarked = scattering_features(rasterize(mp.pattern, bank.n), bank, order=2).values
        marked = first_order_moments(rasterize(mp, bank.n), bank)
    except GeomarkError as e:
        raise e.with_context(pattern_id=index)
    return unmarked, marked


def scatter_patterns(
    patterns: list[MarkedPattern], settings: BankSettings, workers: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Feature matrices ``X`` (unmarked, first and second order) and ``Y`` (marked, first order).

    Returns:
        ``(X, Y)`` with one row per pattern, shapes ``(n, D)`` and ``(n, P)``.
    """
    bank = cached_bank(settings)
    if not patterns:
        return (
            np.zeros((0, bank.first_order_size + bank.second_order_size)),
            np.zeros((0, bank.first_order_size)),
        )
    rows = parallel_map(
        partial(_scatter_one, settings=settings), list(enumerate(patterns)), workers, chunksize=8
    )
    return np.stack([x for x, _ in rows]), np.stack([y for _, y in rows])


def feature_labels(settings: BankSettings) -> tuple[list[str], list[str]]:
    """Column labels of ``X`` and ``Y``."""
    bank = cached_bank(settings)
    first = list(bank.first_order_labels)
    return first + list(bank.second_order_labels), first

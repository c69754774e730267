"""First- and second-order empirical scattering moments on the torus."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import fft

from raster import RasterImage
from utils.errors import GeomarkConfigError, ShapeError

from .filters import FilterBank


@dataclass(frozen=True)
class ScatteringVector:
    """First-order moments and, for order 2, second-order moments with their labels."""

    first_order: np.ndarray = field(repr=False)
    second_order: Optional[np.ndarray] = field(default=None, repr=False)
    labels: tuple[str, ...] = ()

    @property
    def values(self) -> np.ndarray:
        """Joint vector in canonical order."""
        if self.second_order is None:
            return self.first_order
        return np.concatenate([self.first_order, self.second_order])

    def __len__(self) -> int:
        return len(self.values)


def _grid(img, bank: FilterBank) -> np.ndarray:
    values = img.values if isinstance(img, RasterImage) else np.asarray(img, dtype=float)
    if values.shape != (bank.n, bank.n):
        raise ShapeError("Image size does not match the filter bank", shape=values.shape, n=bank.n)
    return values


def wavelet_transform(img, bank: FilterBank, j: int, a: int) -> np.ndarray:
    """Circular convolution of ``img`` with the filter at scale ``j``, angle index ``a``."""
    values = _grid(img, bank)
    return fft.ifft2(fft.fft2(values) * bank.filters[j - bank.j_min, a])


def first_order_fields(img, bank: FilterBank) -> np.ndarray:
    """All first-order wavelet fields, shape ``(scales, angles, n, n)``."""
    return fft.ifft2(fft.fft2(_grid(img, bank)) * bank.filters)


def collapse_min_scale(per_filter: np.ndarray) -> np.ndarray:
    """Flatten a ``(scales, angles, ...)`` array to first-order order, averaging scale j_min."""
    head = per_filter[0].mean(axis=0, keepdims=True)
    tail = per_filter[1:].reshape((-1,) + per_filter.shape[2:])
    return np.concatenate([head, tail])


def first_order_moments(img, bank: FilterBank) -> np.ndarray:
    """Spatial averages of ``|img ⋆ ψ_(j,θ)|``; the j_min entry is averaged over angles."""
    moduli = np.abs(first_order_fields(img, bank))
    return collapse_min_scale(moduli.mean(axis=(-2, -1)))


def _second_order(moduli: np.ndarray, bank: FilterBank) -> np.ndarray:
    entries = []
    for s1 in range(1, len(bank.scales) - 1):
        for a1 in range(bank.n_angles):
            u_hat = fft.fft2(moduli[s1, a1])
            fields = fft.ifft2(u_hat * bank.filters[s1 + 1 :])
            entries.append(np.abs(fields).mean(axis=(-2, -1)).reshape(-1))
    return np.concatenate(entries) if entries else np.zeros(0)


def second_order_moments(img, bank: FilterBank) -> np.ndarray:
    """Spatial averages of ``||img ⋆ ψ_(j1,θ1)| ⋆ ψ_(j2,θ2)|`` for j_min < j1 < j2."""
    return _second_order(np.abs(first_order_fields(img, bank)), bank)


def scattering_features(img, bank: FilterBank, order: int = 2) -> ScatteringVector:
    """First-order (order 1) or joint first- and second-order (order 2) moments."""
    if order not in (1, 2):
        raise GeomarkConfigError("Scattering order must be 1 or 2", order=order)
    moduli = np.abs(first_order_fields(img, bank))
    first = collapse_min_scale(moduli.mean(axis=(-2, -1)))
    if order == 1:
        return ScatteringVector(first, None, tuple(bank.first_order_labels))
    second = _second_order(moduli, bank)
    labels = tuple(bank.first_order_labels) + tuple(bank.second_order_labels)
    return ScatteringVector(first, second, labels)

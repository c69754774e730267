"""Smoothed first-order moments of a marked pixel set and their Jacobian in the marks."""

import numpy as np
from scipy import fft

from raster import image_from_marks
from utils.errors import GeomarkConfigError, ShapeError

from .filters import FilterBank
from .transform import collapse_min_scale, first_order_fields


def smoothed_first_order(
    marks: np.ndarray, pixels: np.ndarray, bank: FilterBank, eps: float
) -> tuple[np.ndarray, np.ndarray]:
    """First-order moments under the smoothed modulus ``√(|z|² + ε²)`` and their Jacobian.

    Args:
        marks: Mark of each point, shape ``(m,)``.
        pixels: Pixel of each point, shape ``(m, 2)``, collision-free.
        bank: Filter bank.
        eps: Modulus floor, > 0.

    Returns:
        ``(moments, jacobian)`` with shapes ``(P,)`` and ``(P, m)`` where
        ``jacobian[p, i] = (1/N²)·Σ_x Re(conj(F_p(x))·ψ_p(x - x_i)) / |F_p(x)|_ε``.
    """
    if not eps > 0:
        raise GeomarkConfigError("Modulus smoothing eps must be positive", eps=eps)
    marks = np.asarray(marks, dtype=float)
    pixels = np.asarray(pixels, dtype=np.int64).reshape(-1, 2)
    if marks.shape != (len(pixels),):
        raise ShapeError("Marks and pixels must align", marks=marks.shape, pixels=len(pixels))

    n = bank.n
    fields = first_order_fields(image_from_marks(marks, pixels, n), bank)
    smoothed = np.sqrt(fields.real**2 + fields.imag**2 + eps**2)
    moments = collapse_min_scale(smoothed.mean(axis=(-2, -1)))

    weights = np.conj(fields) / smoothed
    correlation = fft.ifft2(fft.fft2(weights) * bank.reversed_filters)
    per_filter = correlation[..., pixels[:, 0], pixels[:, 1]].real / (n * n)
    return moments, collapse_min_scale(per_filter)


def first_order_gradient(
    marks: np.ndarray, pixels: np.ndarray, bank: FilterBank, eps: float = 1e-12
) -> np.ndarray:
    """Jacobian of the smoothed first-order moments with respect to the point marks."""
    return smoothed_first_order(marks, pixels, bank, eps)[1]

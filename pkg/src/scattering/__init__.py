"""Morlet wavelet scattering moments of raster images with periodic boundary."""

from .filters import FilterBank, build_filter_bank, morlet_filter
from .gradient import first_order_gradient, smoothed_first_order
from .io import read_feature_matrix, write_feature_matrix
from .transform import (
    ScatteringVector,
    first_order_moments,
    scattering_features,
    second_order_moments,
    wavelet_transform,
)

__all__ = [
    "FilterBank",
    "ScatteringVector",
    "build_filter_bank",
    "first_order_gradient",
    "first_order_moments",
    "morlet_filter",
    "read_feature_matrix",
    "scattering_features",
    "second_order_moments",
    "smoothed_first_order",
    "wavelet_transform",
    "write_feature_matrix",
]

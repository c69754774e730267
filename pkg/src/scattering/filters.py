"""Zero-mean Morlet filter bank on the periodic N×N grid.

Filters are built in pixel units: at scale ``j`` the Gaussian width is ``σ·2^j`` and the
carrier frequency ``ω·2^-j`` points along angle ``θ`` (θ measured from the row axis).
Each spatial filter is periodized over the torus, made exactly zero-mean by subtracting
a multiple of its Gaussian envelope, normalized to unit L1 norm on the grid, and stored
as its 2D DFT.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy import fft

from utils.errors import GeomarkConfigError

# Gaussian tails beyond this many widths are below double precision
_TAIL_WIDTHS = 9.0


@dataclass(frozen=True)
class FilterBank:
    """Frequency-domain Morlet filters for scales ``j_min..j_max`` and ``len(angles)`` angles.

    ``filters[s, a]`` is the DFT of the filter at scale ``j_min + s`` and angle ``angles[a]``.
    """

    n: int
    j_min: int
    j_max: int
    angles: tuple[float, ...]
    omega: float
    sigma: float
    filters: np.ndarray = field(repr=False)

    @property
    def scales(self) -> range:
        """Scales ``j_min..j_max`` inclusive."""
        return range(self.j_min, self.j_max + 1)

    @property
    def n_angles(self) -> int:
        """Number of angles per scale."""
        return len(self.angles)

    @property
    def first_order_size(self) -> int:
        """Length of the first-order vector (the minimal scale counts once)."""
        return 1 + (len(self.scales) - 1) * self.n_angles

    @property
    def second_order_pairs(self) -> list[tuple[int, int]]:
        """Scale pairs ``(j1, j2)`` with ``j_min < j1 < j2 <= j_max``."""
        return [
            (j1, j2)
            for j1 in range(self.j_min + 1, self.j_max + 1)
            for j2 in range(j1 + 1, self.j_max + 1)
        ]

    @property
    def second_order_size(self) -> int:
        """Length of the second-order vector."""
        return len(self.second_order_pairs) * self.n_angles**2

    @cached_property
    def first_order_labels(self) -> list[str]:
        """Labels ``s1:j=0`` then ``s1:j=<j>,t=<angle index>``."""
        labels = [f"s1:j={self.j_min}"]
        for j in self.scales[1:]:
            labels.extend(f"s1:j={j},t={t}" for t in range(self.n_angles))
        return labels

    @cached_property
    def second_order_labels(self) -> list[str]:
        """Labels ``s2:j1=..,t1=..,j2=..,t2=..`` in canonical order."""
        labels = []
        for j1 in range(self.j_min + 1, self.j_max + 1):
            for t1 in range(self.n_angles):
                for j2 in range(j1 + 1, self.j_max + 1):
                    labels.extend(
                        f"s2:j1={j1},t1={t1},j2={j2},t2={t2}" for t2 in range(self.n_angles)
                    )
        return labels

    @cached_property
    def reversed_filters(self) -> np.ndarray:
        """DFTs of the mirrored filters ``ψ(-x)``, i.e. ``ψ̂(-k)``."""
        flipped = np.flip(self.filters, axis=(-2, -1))
        return np.roll(flipped, 1, axis=(-2, -1))

    def spatial(self, j: int, a: int) -> np.ndarray:
        """Spatial filter at scale ``j`` and angle index ``a``, origin at pixel (0, 0)."""
        return fft.ifft2(self.filters[j - self.j_min, a])


def _periodized_factor(coords: np.ndarray, n: int, sigma: float, k: float) -> np.ndarray:
    """Σ_m exp(i·k·(x + m·n) - (x + m·n)² / (2σ²)) over enough periodic images."""
    reach = int(math.ceil(_TAIL_WIDTHS * sigma / n)) + 1
    shifted = coords[None, :] + n * np.arange(-reach, reach + 1)[:, None]
    return np.sum(np.exp(1j * k * shifted - shifted**2 / (2.0 * sigma**2)), axis=0)


def morlet_filter(n: int, j: int, theta: float, omega: float, sigma: float) -> np.ndarray:
    """Spatial zero-mean Morlet filter with unit L1 norm on the periodic grid."""
    coords = fft.fftfreq(n, d=1.0 / n)
    sigma_j = sigma * 2.0**j
    k = omega * 2.0 ** (-j)
    # both the oscillating and the plain Gaussian terms separate in rows and columns
    gabor = np.outer(
        _periodized_factor(coords, n, sigma_j, k * math.cos(theta)),
        _periodized_factor(coords, n, sigma_j, k * math.sin(theta)),
    )
    envelope = np.outer(
        _periodized_factor(coords, n, sigma_j, 0.0),
        _periodized_factor(coords, n, sigma_j, 0.0),
    ).real
    kappa = gabor.sum() / envelope.sum()
    psi = gabor - kappa * envelope
    return psi / np.sum(np.abs(psi))


def build_filter_bank(
    n: int = 128,
    j_min: int = 0,
    j_max: int = 7,
    angles: int | Sequence[float] = 8,
    omega: float = 5.5,
    sigma: float = 1.0,
) -> FilterBank:
    """Build the Morlet bank over scales ``j_min..j_max`` and the given angles.

    Args:
        n: Grid size, a power of two.
        j_min: Smallest scale (its first-order moments are averaged over angles).
        j_max: Largest scale, at most ``log2(n)``.
        angles: Number of angles evenly spaced in ``[0, π)``, or explicit angles.
        omega: Carrier frequency magnitude at unit scale (radians per pixel).
        sigma: Gaussian width at unit scale (pixels).

    Raises:
        GeomarkConfigError: For inconsistent scale bounds or parameters.
    """
    if n < 2 or n & (n - 1):
        raise GeomarkConfigError("Filter bank size must be a power of two", n=n)
    if j_min < 0 or j_max < j_min:
        raise GeomarkConfigError("Scale bounds must satisfy 0 <= j_min <= j_max", j_min=j_min)
    if j_max > int(math.log2(n)):
        raise GeomarkConfigError("j_max cannot exceed log2(n)", j_max=j_max, n=n)
    if omega <= 0 or sigma <= 0:
        raise GeomarkConfigError("Morlet omega and sigma must be positive")
    if isinstance(angles, int):
        if angles < 1:
            raise GeomarkConfigError("At least one angle is required", angles=angles)
        angles = tuple(math.pi * a / angles for a in range(angles))
    else:
        angles = tuple(float(a) for a in angles)

    spatial = np.stack(
        [
            np.stack([morlet_filter(n, j, theta, omega, sigma) for theta in angles])
            for j in range(j_min, j_max + 1)
        ]
    )
    filters = fft.fft2(spatial)
    filters.setflags(write=False)
    return FilterBank(n, j_min, j_max, angles, float(omega), float(sigma), filters)

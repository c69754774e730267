"""Response (path-loss) functions used by the shot-noise marks."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from utils.errors import DomainError, GeomarkConfigError


class ResponseKind(str, Enum):
    """Supported response function families."""

    POWER_LAW = "power_law"
    TRUNCATED_POWER_LAW = "truncated_power_law"


@dataclass(frozen=True)
class ResponseFunction:
    """Nonincreasing positive response ``ℓ(r)``.

    The truncated form is ``ℓ(r) = max(a·r, c)^(-β)``; the pure power law is ``r^(-β)``.
    Defaults are the experimental choice ``max(10r, 0.6)^(-3)``.
    """

    kind: ResponseKind = ResponseKind.TRUNCATED_POWER_LAW
    beta: float = 3.0
    a: float = 10.0
    c: float = 0.6

    def __post_init__(self):
        object.__setattr__(self, "kind", ResponseKind(self.kind))
        if not self.beta > 2:
            raise GeomarkConfigError("Response exponent beta must exceed 2", beta=self.beta)
        if not (self.a > 0 and self.c > 0):
            raise GeomarkConfigError("Response scale a and floor c must be positive")

    @property
    def ceiling(self) -> float:
        """Upper bound of the truncated form, ``c^(-β)``."""
        return self.c ** (-self.beta)

    def __call__(self, r):
        """Evaluate the response at distances ``r`` (scalar or array)."""
        return response_eval(self, r)


def response_eval(resp: ResponseFunction, r):
    """Evaluate ``resp`` at nonnegative distance(s) ``r``.

    Raises:
        DomainError: For negative distances, or ``r = 0`` with the pure power law.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise DomainError("Response is defined for nonnegative distances only")
    if resp.kind is ResponseKind.TRUNCATED_POWER_LAW:
        value = np.maximum(resp.a * r_arr, resp.c) ** (-resp.beta)
    else:
        if np.any(r_arr == 0):
            raise DomainError("Pure power-law response diverges at r = 0")
        value = r_arr ** (-resp.beta)
    return float(value) if np.ndim(value) == 0 else value

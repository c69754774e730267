"""Squared distance between smoothed first-order moments and a target vector."""

import numpy as np

from scattering import FilterBank, smoothed_first_order
from utils.errors import NumericalError, ShapeError


def objective(
    marks: np.ndarray,
    pixels: np.ndarray,
    bank: FilterBank,
    target: np.ndarray,
    eps: float = 1e-12,
) -> tuple[float, np.ndarray]:
    """Value ``Σ_p (S_p(marks) - t_p)²`` and its gradient ``2·Jᵀ·(S - t)``.

    Raises:
        ShapeError: If ``target`` does not have one entry per first-order moment.
        NumericalError: If the value is not finite.
    """
    target = np.asarray(target, dtype=float)
    if target.shape != (bank.first_order_size,):
        raise ShapeError(
            "Target does not match the first-order size",
            expected=bank.first_order_size,
            got=target.shape,
        )
    moments, jacobian = smoothed_first_order(marks, pixels, bank, eps)
    residual = moments - target
    value = float(residual @ residual)
    if not np.isfinite(value):
        raise NumericalError("Non-finite reconstruction objective", value=value)
    return value, 2.0 * (jacobian.T @ residual)

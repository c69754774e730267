"""L-BFGS-B reconstruction of per-point marks from a first-order moment target."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import OptimizeResult, minimize

from geometry import PointPattern
from log import get_logger
from raster import pixel_indices
from scattering import FilterBank
from utils.errors import NumericalError, ShapeError

from .config import ReconstructionConfig
from .objective import objective

logger = get_logger()


@dataclass(frozen=True)
class ReconstructionResult:
    """Final iterate of one reconstruction with its descent history.

    ``iterates[k]`` holds the marks after ``k`` iterations (``iterates[0]`` is the start),
    ``objectives[k]`` their objective value.
    """

    marks: np.ndarray = field(repr=False)
    objective: float
    iterations: int
    iterates: list[np.ndarray] = field(repr=False)
    objectives: list[float] = field(repr=False)
    message: str = ""

    def at_cap(self, cap: int) -> np.ndarray:
        """Marks the run would have returned with ``max_iterations=cap``."""
        return self.iterates[min(cap, len(self.iterates) - 1)]


def initial_marks(count: int, cfg: ReconstructionConfig) -> np.ndarray:
    """Constant starting vector, clipped to the lower bound."""
    return np.full(count, max(cfg.init_value, cfg.lower_bound), dtype=float)


def reconstruct_marks(
    p: PointPattern,
    target: np.ndarray,
    bank: FilterBank,
    cfg: ReconstructionConfig,
    initial: Optional[np.ndarray] = None,
) -> ReconstructionResult:
    """Find marks of ``p`` whose smoothed first-order moments approach ``target``.

    Runs bounded L-BFGS-B for at most ``cfg.max_iterations`` iterations and returns the
    final iterate; the iteration cap acts as the regularizer.

    Raises:
        CollisionError: If two points of ``p`` share a pixel.
        NumericalError: If the objective becomes non-finite.
    """
    pixels = pixel_indices(p, bank.n)
    x0 = initial_marks(len(p), cfg) if initial is None else np.asarray(initial, dtype=float)
    if x0.shape != (len(p),):
        raise ShapeError("Initial marks must align with the points", got=x0.shape)
    if len(p) == 0:
        value, _ = objective(x0, pixels, bank, target, cfg.eps)
        return ReconstructionResult(x0, value, 0, [x0], [value], "empty pattern")

    x0 = np.maximum(x0, cfg.lower_bound)
    start_value, _ = objective(x0, pixels, bank, target, cfg.eps)
    iterates, objectives = [x0.copy()], [start_value]

    def record(intermediate_result: OptimizeResult):
        iterates.append(np.array(intermediate_result.x, dtype=float))
        objectives.append(float(intermediate_result.fun))

    result = minimize(
        objective,
        x0,
        args=(pixels, bank, target, cfg.eps),
        jac=True,
        method="L-BFGS-B",
        bounds=[(cfg.lower_bound, None)] * len(p),
        callback=record,
        options={
            "maxiter": cfg.max_iterations,
            "maxcor": cfg.memory,
            "gtol": cfg.gradient_tolerance,
            "ftol": 0.0,
        },
    )
    if not np.isfinite(result.fun):
        raise NumericalError("Reconstruction diverged", objective=float(result.fun))

    marks = np.maximum(np.asarray(result.x, dtype=float), cfg.lower_bound)
    if not np.array_equal(iterates[-1], marks):
        # line-search failures return the last accepted point without a callback
        iterates.append(marks.copy())
        objectives.append(float(result.fun))
    logger.debug(
        "Reconstruction finished",
        extra={
            "points": len(p),
            "iterations": int(result.nit),
            "objective": float(result.fun),
            "status": result.message,
        },
    )
    return ReconstructionResult(
        marks=marks,
        objective=float(result.fun),
        iterations=int(result.nit),
        iterates=iterates,
        objectives=objectives,
        message=str(result.message),
    )

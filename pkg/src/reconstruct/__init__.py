"""Recovery of per-point marks from first-order scattering moments."""

from .config import ReconstructionConfig
from .io import read_reconstruction_report, reconstruction_record, write_reconstruction_report
from .models import ReconstructedPoint, ReconstructionRecord
from .objective import objective
from .solver import ReconstructionResult, initial_marks, reconstruct_marks
from .tuning import ValidationItem, iteration_cap_curve, tune_iteration_cap

__all__ = [
    "ReconstructedPoint",
    "ReconstructionConfig",
    "ReconstructionRecord",
    "ReconstructionResult",
    "ValidationItem",
    "initial_marks",
    "iteration_cap_curve",
    "objective",
    "read_reconstruction_report",
    "reconstruct_marks",
    "reconstruction_record",
    "tune_iteration_cap",
    "write_reconstruction_report",
]

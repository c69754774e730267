"""End-to-end experiments: datasets, features, training, reconstruction and evaluation."""

from .benchmark import BaselineOutcome, run_baseline, sweep_baseline_k
from .dataset import generate_dataset
from .experiment import (
    MARK_PRESETS,
    SCALE_PRESETS,
    BankSettings,
    BaselineSettings,
    ExperimentConfig,
    ReconstructionSettings,
    ResponseSettings,
    RidgeSettings,
    dump_config,
    load_config,
    resolve_config,
    save_config,
)
from .export import export_outputs
from .features import scatter_patterns
from .layout import RunLayout
from .metrics import Metrics, compute_metrics, mutual_nearest_pairs, swap_pairs
from .pipeline import (
    run_pipeline,
    stage_baseline,
    stage_evaluate,
    stage_generate,
    stage_reconstruct,
    stage_scatter,
    stage_train,
)
from .report import EvaluationReport

__all__ = [
    "BankSettings",
    "BaselineOutcome",
    "BaselineSettings",
    "EvaluationReport",
    "ExperimentConfig",
    "MARK_PRESETS",
    "Metrics",
    "ReconstructionSettings",
    "ResponseSettings",
    "RidgeSettings",
    "RunLayout",
    "SCALE_PRESETS",
    "compute_metrics",
    "dump_config",
    "export_outputs",
    "generate_dataset",
    "load_config",
    "mutual_nearest_pairs",
    "resolve_config",
    "run_baseline",
    "run_pipeline",
    "save_config",
    "scatter_patterns",
    "stage_baseline",
    "stage_evaluate",
    "stage_generate",
    "stage_reconstruct",
    "stage_scatter",
    "stage_train",
    "swap_pairs",
    "sweep_baseline_k",
]

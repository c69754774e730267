"""End-to-end experiment stages chained through the files of a run directory.

Each stage reads what earlier stages wrote under the run's ``RunLayout`` and writes its
own artifacts, so stages can be run one at a time from the CLI or all together through
``run_pipeline``.
"""

from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from geometry import MarkedPattern, read_patterns, write_patterns
from log import get_logger
from marks import MarkModel
from reconstruct import (
    reconstruction_record,
    read_reconstruction_report,
    write_reconstruction_report,
)
from regress import (
    load_ridge_model,
    predict,
    save_baseline_model,
    save_ridge_model,
    write_cv_report,
)
from scattering import read_feature_matrix, write_feature_matrix
from telemetry import stage
from utils.errors import GeomarkConfigError
from utils.tracing import get_trace_context

from .benchmark import run_baseline, sweep_baseline_k
from .dataset import generate_dataset
from .experiment import ExperimentConfig, save_config
from .export import export_outputs, write_csv
from .features import feature_labels, scatter_patterns
from .layout import RunLayout, Split, TargetKind
from .reconstruction import initial_value, reconstruct_split, tune_caps
from .report import EvaluationReport, method_result, profile_frame
from .training import regression_error_frame, train_regression

logger = get_logger()

TARGETS: tuple[TargetKind, ...] = ("estimated", "exact")


def _splits(cfg: ExperimentConfig) -> tuple[Split, ...]:
    return ("train", "test", "validation") if cfg.reconstruction.tune else ("train", "test")


def load_split(layout: RunLayout, split: Split) -> list[MarkedPattern]:
    """Marked patterns of a split written by ``stage_generate``.

    Raises:
        GeomarkConfigError: If the split has not been generated.
    """
    path = layout.patterns(split)
    if not path.exists():
        raise GeomarkConfigError("Split not generated yet; run generate first", path=str(path))
    patterns = read_patterns(path)
    if not all(isinstance(mp, MarkedPattern) for mp in patterns):
        raise GeomarkConfigError("Split file holds unmarked patterns", path=str(path))
    return patterns


def load_features(layout: RunLayout, split: Split) -> tuple[np.ndarray, np.ndarray]:
    """Feature matrices ``(X, Y)`` of a split written by ``stage_scatter``."""
    paths = (layout.unmarked_features(split), layout.marked_features(split))
    for path in paths:
        if not path.exists():
            raise GeomarkConfigError("Features not computed yet; run scatter first", path=str(path))
    return read_feature_matrix(paths[0])[0], read_feature_matrix(paths[1])[0]


def stage_generate(
    cfg: ExperimentConfig, layout: RunLayout, workers: Optional[int] = None
) -> dict[str, list[MarkedPattern]]:
    """Sample, mark and persist every split of the experiment."""
    save_config(cfg, layout.config)
    datasets = {}
    for split in _splits(cfg):
        with stage("generate", split=split, mark=cfg.mark.value, seed=cfg.seed):
            datasets[split] = generate_dataset(cfg, split, workers)
            write_patterns(layout.patterns(split), datasets[split])
    return datasets


def stage_scatter(cfg: ExperimentConfig, layout: RunLayout, workers: Optional[int] = None):
    """Compute and persist unmarked and marked scattering features of every split."""
    x_labels, y_labels = feature_labels(cfg.bank)
    for split in _splits(cfg):
        patterns = load_split(layout, split)
        with stage("scatter", split=split, patterns=len(patterns)):
            X, Y = scatter_patterns(patterns, cfg.bank, workers)
            write_feature_matrix(layout.unmarked_features(split), X, x_labels)
            write_feature_matrix(layout.marked_features(split), Y, y_labels)


def stage_train(cfg: ExperimentConfig, layout: RunLayout):
    """Fit the cross-validated ridge regression of marked on unmarked features."""
    X, Y = load_features(layout, "train")
    x_labels, y_labels = feature_labels(cfg.bank)
    with stage("train", samples=len(X)):
        model, grid, errors = train_regression(X, Y, cfg.ridge, cfg.seed, x_labels, y_labels)
        save_ridge_model(layout.ridge_model, model)
        write_cv_report(layout.cv_report, grid, errors, y_labels)
    return model


def exact_targets(layout: RunLayout) -> np.ndarray:
    """Exact first-order moments of the marked test rasters."""
    return load_features(layout, "test")[1]


def estimated_targets(layout: RunLayout, split: Split = "test") -> np.ndarray:
    """Regression estimates of the marked moments from the unmarked features."""
    return predict(load_ridge_model(layout.ridge_model), load_features(layout, split)[0])


def stage_reconstruct(
    cfg: ExperimentConfig, layout: RunLayout, workers: Optional[int] = None
) -> dict[TargetKind, int]:
    """Reconstruct test marks from estimated and from exact targets.

    With ``reconstruction.tune`` set, both iteration caps are first chosen on the
    validation split and the RMSE-per-cap curves are written.

    Returns:
        The iteration cap used per target kind.
    """
    settings = cfg.reconstruction
    init = initial_value(settings, load_split(layout, "train"))
    caps: dict[TargetKind, int] = {
        "estimated": settings.cap_estimated,
        "exact": settings.cap_exact,
    }
    if settings.tune:
        validation = load_split(layout, "validation")
        with stage("tune", patterns=len(validation)):
            caps, curve = tune_caps(
                validation,
                {
                    "estimated": estimated_targets(layout, "validation"),
                    "exact": load_features(layout, "validation")[1],
                },
                cfg.bank,
                settings,
                init,
                workers,
            )
            write_csv(curve, layout.iteration_curve)

    test = load_split(layout, "test")
    targets = {"estimated": estimated_targets(layout), "exact": exact_targets(layout)}
    for kind in TARGETS:
        solver = settings.solver_config(caps[kind], init)
        with stage("reconstruct", target=kind, patterns=len(test), cap=caps[kind]):
            results = reconstruct_split(test, targets[kind], cfg.bank, solver, workers)
            write_reconstruction_report(
                layout.reconstruction(kind),
                (
                    reconstruction_record(i, result, kind, mp.marks)
                    for i, (mp, result) in enumerate(zip(test, results))
                ),
            )
    return caps


def stage_baseline(
    cfg: ExperimentConfig, layout: RunLayout, k_sweep: Optional[Sequence[int]] = None
) -> Optional[pd.DataFrame]:
    """Fit and evaluate the local distance-matrix benchmark, optionally sweeping K.

    Returns:
        The K-sweep table when ``k_sweep`` is given.
    """
    train, test = load_split(layout, "train"), load_split(layout, "test")
    with stage("baseline", K=cfg.baseline.k or 0):
        outcome = run_baseline(cfg, train, test)
        if outcome is not None:
            save_baseline_model(layout.baseline_model, outcome.model)
            write_csv(outcome.predictions, layout.baseline_predictions)
    if not k_sweep:
        return None
    with stage("baseline_sweep", ks=",".join(map(str, k_sweep))):
        sweep = sweep_baseline_k(cfg, train, test, k_sweep)
        write_csv(sweep, layout.baseline_k_sweep)
    return sweep


def _caps_used(cfg: ExperimentConfig, curve: Optional[pd.DataFrame]) -> dict[str, int]:
    if curve is None:
        settings = cfg.reconstruction
        return {"estimated": settings.cap_estimated, "exact": settings.cap_exact}
    best = curve.loc[curve.groupby("target", sort=False)["rmse"].idxmin()]
    return {str(t): int(c) for t, c in zip(best["target"], best["cap"])}


def stage_evaluate(cfg: ExperimentConfig, layout: RunLayout) -> EvaluationReport:
    """Compute metrics of every available method and export all outputs."""
    test = load_split(layout, "test")
    report = EvaluationReport(mark=cfg.mark.value)
    with stage("evaluate", patterns=len(test)):
        report.trace = get_trace_context()
        reconstructions: dict[str, list[np.ndarray]] = {}
        for kind in TARGETS:
            path = layout.reconstruction(kind)
            if not path.exists():
                continue
            records = read_reconstruction_report(path)
            per_pattern = [np.array([pt.reconstructed for pt in r.points]) for r in records]
            reconstructions[kind] = per_pattern
            report.methods[kind] = method_result(
                np.concatenate([mp.marks for mp in test]),
                np.concatenate(per_pattern) if per_pattern else np.zeros(0),
                test,
                per_pattern,
            )
        if reconstructions:
            report.profiles = profile_frame(test, reconstructions)

        if layout.baseline_predictions.exists():
            predictions = pd.read_csv(layout.baseline_predictions, float_precision="round_trip")
            if not predictions.empty:
                report.methods["baseline"] = method_result(
                    predictions["true"].to_numpy(), predictions["predicted"].to_numpy()
                )
                report.baseline_k = cfg.baseline.k
                k = cfg.baseline.k or 0
                report.baseline_skipped = {
                    "train": sum(1 for mp in load_split(layout, "train") if len(mp) < k),
                    "test": sum(1 for mp in test if len(mp) < k),
                }
        elif cfg.baseline.k is None or cfg.mark is MarkModel.NEAREST_NEIGHBOR:
            report.notes.append("baseline skipped: the nearest distance is a baseline feature")

        if layout.ridge_model.exists():
            model = load_ridge_model(layout.ridge_model)
            report.regression_errors = regression_error_frame(
                model,
                {"train": load_features(layout, "train"), "test": load_features(layout, "test")},
            )
        if cfg.reconstruction.tune and layout.iteration_curve.exists():
            report.iteration_curve = pd.read_csv(
                layout.iteration_curve, float_precision="round_trip"
            )
        report.iteration_caps = _caps_used(cfg, report.iteration_curve)
        export_outputs(report, layout, plots=cfg.plots)
    for name, result in report.methods.items():
        logger.info(
            "Method evaluated",
            extra={
                "method": name,
                "rmse": result.metrics.rmse,
                "nrmse1": result.metrics.nrmse1,
                "nrmse2": result.metrics.nrmse2,
                "swap_pairs": result.swap_pairs,
            },
        )
    return report


def run_pipeline(
    cfg: ExperimentConfig,
    out: Path,
    workers: Optional[int] = None,
    k_sweep: Optional[Sequence[int]] = None,
) -> EvaluationReport:
    """Generate, scatter, train, reconstruct, run the benchmark and evaluate in one go."""
    layout = RunLayout(Path(out))
    with stage("pipeline", mark=cfg.mark.value, n_train=cfg.n_train, n_test=cfg.n_test):
        stage_generate(cfg, layout, workers)
        stage_scatter(cfg, layout, workers)
        stage_train(cfg, layout)
        stage_reconstruct(cfg, layout, workers)
        stage_baseline(cfg, layout, k_sweep)
        return stage_evaluate(cfg, layout)

"""CSV, JSON and optional SVG outputs of an evaluation report."""

from pathlib import Path

import pandas as pd

from log import get_logger
from utils.constants import FLOAT_FORMAT

from .layout import RunLayout
from .report import EvaluationReport

logger = get_logger()


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """Write ``frame`` without index, floats with 17 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def _qq_figure(frame: pd.DataFrame, path: Path) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 6))
    for method, group in frame.groupby("method", sort=False):
        ax.scatter(group["true"], group["predicted"], s=4, alpha=0.5, label=str(method))
    low = float(min(frame["true"].min(), frame["predicted"].min()))
    high = float(max(frame["true"].max(), frame["predicted"].max()))
    ax.plot([low, high], [low, high], color="0.4", ls="--", lw=1)
    ax.set_xlabel("true mark")
    ax.set_ylabel("reconstructed mark")
    ax.grid(alpha=0.3)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _line_figure(frame: pd.DataFrame, x: str, y: str, group: str, path: Path) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4))
    for name, part in frame.groupby(group, sort=False):
        ax.plot(part[x].to_numpy(), part[y].to_numpy(), marker="o", ms=3, label=str(name))
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    ax.grid(alpha=0.3)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def export_outputs(report: EvaluationReport, layout: RunLayout, plots: bool = False) -> list[Path]:
    """Write metrics JSON, Q-Q table, mark profiles, regression errors and the cap curve.

    Returns:
        Paths written, in writing order.
    """
    written = []
    layout.metrics.parent.mkdir(parents=True, exist_ok=True)
    layout.metrics.write_text(report.metrics_file().model_dump_json(indent=2), encoding="utf-8")
    written.append(layout.metrics)

    qq = report.qq_frame()
    written.append(write_csv(qq, layout.qq))

    if report.profiles is not None:
        for pattern_id, profile in report.profiles.groupby("pattern", sort=True):
            path = layout.profiles / f"pattern_{int(pattern_id):03d}.csv"
            written.append(write_csv(profile.drop(columns="pattern"), path))

    if report.regression_errors is not None:
        written.append(write_csv(report.regression_errors, layout.regression_errors))

    if report.iteration_curve is not None:
        written.append(write_csv(report.iteration_curve, layout.iteration_curve))

    if plots:
        layout.figures.mkdir(parents=True, exist_ok=True)
        if not qq.empty:
            written.append(_qq_figure(qq, layout.figures / "qq.svg"))
        if report.regression_errors is not None:
            frame = report.regression_errors.assign(
                p=report.regression_errors.groupby("split").cumcount()
            )
            path = layout.figures / "regression_errors.svg"
            written.append(_line_figure(frame, "p", "relative_error", "split", path))
        if report.iteration_curve is not None:
            path = layout.figures / "iteration_curve.svg"
            written.append(_line_figure(report.iteration_curve, "cap", "rmse", "target", path))

    logger.info("Outputs exported", extra={"files": len(written), "out": str(layout.root)})
    return written

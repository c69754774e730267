"""File layout of one run directory."""

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

Split = Literal["train", "test", "validation"]
TargetKind = Literal["estimated", "exact"]


@dataclass(frozen=True)
class RunLayout:
    """Paths of every artifact a run reads or writes under ``root``."""

    root: Path

    @property
    def config(self) -> Path:
        """Resolved experiment config."""
        return self.root / "config.json"

    def patterns(self, split: Split) -> Path:
        """Marked patterns of a split."""
        return self.root / f"{split}.ndjson"

    def unmarked_features(self, split: Split) -> Path:
        """Second-order features of the unmarked rasters."""
        return self.root / "features" / f"{split}_unmarked.csv"

    def marked_features(self, split: Split) -> Path:
        """First-order moments of the marked rasters."""
        return self.root / "features" / f"{split}_marked.csv"

    @property
    def ridge_model(self) -> Path:
        """Fitted ridge model."""
        return self.root / "ridge_model.json"

    @property
    def cv_report(self) -> Path:
        """Validation MSE per output and λ."""
        return self.root / "cv_report.csv"

    def reconstruction(self, target: TargetKind) -> Path:
        """Reconstruction report for one target kind."""
        return self.root / f"reconstruction_{target}.ndjson"

    @property
    def iteration_curve(self) -> Path:
        """RMSE per iteration cap."""
        return self.root / "iteration_curve.csv"

    @property
    def baseline_model(self) -> Path:
        """Fitted baseline model."""
        return self.root / "baseline_model.json"

    @property
    def baseline_predictions(self) -> Path:
        """Baseline predictions of the test points."""
        return self.root / "baseline_predictions.csv"

    @property
    def baseline_k_sweep(self) -> Path:
        """Baseline RMSE per neighbourhood size."""
        return self.root / "baseline_k_sweep.csv"

    @property
    def metrics(self) -> Path:
        """Metrics per method."""
        return self.root / "metrics.json"

    @property
    def qq(self) -> Path:
        """True and predicted marks per method."""
        return self.root / "qq.csv"

    @property
    def regression_errors(self) -> Path:
        """Relative regression errors per output."""
        return self.root / "regression_errors.csv"

    @property
    def profiles(self) -> Path:
        """Directory of per-pattern mark profiles."""
        return self.root / "profiles"

    @property
    def figures(self) -> Path:
        """Directory of SVG renderings."""
        return self.root / "figures"

"""Experiment configuration: pydantic models, protocol presets and file loading.

A run is fully described by one ``ExperimentConfig``. Values are resolved in order:
model defaults, the scale preset (``desk`` or ``paper``), the mark preset (intensity,
iteration caps, baseline K), the config file, then command-line overrides.
"""

import json
import tomllib
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from marks import MarkModel, ResponseFunction, ResponseKind
from reconstruct import ReconstructionConfig
from regress import DEFAULT_LAMBDA_GRID
from scattering import FilterBank, build_filter_bank
from utils.errors import GeomarkConfigError

Preset = Literal["desk", "paper"]


class ResponseSettings(BaseModel):
    """Response function of the shot-noise marks, ``max(a·r, c)^(-β)`` by default."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: ResponseKind = ResponseKind.TRUNCATED_POWER_LAW
    beta: float = Field(3.0, gt=2)
    a: float = Field(10.0, gt=0)
    c: float = Field(0.6, gt=0)

    def build(self) -> ResponseFunction:
        """Response function object."""
        return ResponseFunction(self.kind, self.beta, self.a, self.c)


class BankSettings(BaseModel):
    """Raster size and Morlet filter bank parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(128, ge=16)
    j_min: int = Field(0, ge=0)
    j_max: int = 7
    angles: int = Field(8, ge=1)
    omega: float = Field(5.5, gt=0)
    sigma: float = Field(1.0, gt=0)

    def build(self) -> FilterBank:
        """Filter bank in the frequency domain."""
        return build_filter_bank(
            self.n, self.j_min, self.j_max, self.angles, self.omega, self.sigma
        )


class RidgeSettings(BaseModel):
    """Cross-validated ridge regression of marked moments."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    grid: list[float] = Field(default_factory=lambda: list(DEFAULT_LAMBDA_GRID), min_length=1)
    folds: int = Field(5, ge=2)
    cv_fraction: float = Field(0.5, gt=0, le=1, description="Share of training used for CV")
    standardize: bool = True

    @model_validator(mode="after")
    def _check_grid(self) -> "RidgeSettings":
        if any(lam < 0 for lam in self.grid):
            raise ValueError("lambda grid must be nonnegative")
        return self


class ReconstructionSettings(BaseModel):
    """Iteration caps per target kind and shared L-BFGS-B parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    cap_exact: int = Field(30, ge=1)
    cap_estimated: int = Field(4, ge=1)
    eps: float = Field(1e-12, gt=0)
    memory: int = Field(10, ge=1)
    gradient_tolerance: float = Field(1e-12, ge=0)
    lower_bound: float = 0.0
    init: Literal["training_mean", "constant"] = "training_mean"
    init_value: float = Field(1.0, ge=0)
    tune: bool = Field(False, description="Tune both caps on a validation split")
    tune_caps: list[int] = Field(
        default_factory=lambda: [1, 2, 3, 4, 5, 6, 8, 10, 15, 20, 30, 50, 75, 100, 150, 250]
    )
    tune_patterns: int = Field(20, ge=1)

    def solver_config(self, max_iterations: int, init_value: Optional[float] = None):
        """Solver settings for one target kind."""
        return ReconstructionConfig(
            max_iterations=max_iterations,
            eps=self.eps,
            lower_bound=self.lower_bound,
            init=self.init,
            init_value=self.init_value if init_value is None else init_value,
            memory=self.memory,
            gradient_tolerance=self.gradient_tolerance,
        )


class BaselineSettings(BaseModel):
    """Local distance-matrix benchmark."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    k: Optional[int] = Field(15, ge=2, description="Neighbourhood size; None disables")
    max_samples: int = Field(20_000, ge=1, description="Training points used")
    max_test_points: int = Field(20_000, ge=1, description="Test points evaluated")
    min_samples: int = Field(10, ge=1)
    k_sweep: list[int] = Field(default_factory=lambda: [10, 15, 20, 35])


class ExperimentConfig(BaseModel):
    """Everything needed to reproduce one experiment."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mark: MarkModel = MarkModel.SHOT_NOISE
    intensity: float = Field(40.0, gt=0)
    side: float = Field(1.0, gt=0)
    n_train: int = Field(2000, ge=1)
    n_test: int = Field(50, ge=1)
    seed: int = Field(0, ge=0)
    max_resamples: int = Field(100, ge=1, description="Redraws allowed on pixel collision")
    plots: bool = Field(False, description="Render SVG figures next to the CSV outputs")
    response: ResponseSettings = Field(default_factory=ResponseSettings)
    bank: BankSettings = Field(default_factory=BankSettings)
    ridge: RidgeSettings = Field(default_factory=RidgeSettings)
    reconstruction: ReconstructionSettings = Field(default_factory=ReconstructionSettings)
    baseline: BaselineSettings = Field(default_factory=BaselineSettings)

    @model_validator(mode="after")
    def _check_scales(self) -> "ExperimentConfig":
        if not self.bank.j_min <= self.bank.j_max:
            raise ValueError("bank.j_min must not exceed bank.j_max")
        if 2**self.bank.j_max > self.bank.n:
            raise ValueError("bank.j_max must satisfy 2^j_max <= n")
        return self


SCALE_PRESETS: dict[str, dict[str, Any]] = {
    "desk": {"n_train": 2000, "n_test": 50},
    "paper": {"n_train": 10_000, "n_test": 100},
}

MARK_PRESETS: dict[MarkModel, dict[str, Any]] = {
    MarkModel.SHOT_NOISE: {
        "intensity": 40.0,
        "reconstruction": {"cap_exact": 30, "cap_estimated": 4},
        "baseline": {"k": 15},
    },
    MarkModel.NEAREST_NEIGHBOR: {
        "intensity": 40.0,
        "reconstruction": {"cap_exact": 250, "cap_estimated": 8},
        "baseline": {"k": None},
    },
    MarkModel.VORONOI_AREA: {
        "intensity": 30.0,
        "reconstruction": {"cap_exact": 30, "cap_estimated": 6},
        "baseline": {"k": 35},
    },
    MarkModel.VORONOI_INERTIA: {
        "intensity": 30.0,
        "reconstruction": {"cap_exact": 150, "cap_estimated": 8},
        "baseline": {"k": 15},
    },
    MarkModel.VORONOI_SHOT_NOISE: {
        "intensity": 30.0,
        "reconstruction": {"cap_exact": 50, "cap_estimated": 5},
        "baseline": {"k": 15},
    },
}


def _merge(base: dict, update: dict) -> dict:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def read_config_file(path: Path) -> dict[str, Any]:
    """Raw mapping from a ``.toml`` or ``.json`` experiment file.

    Raises:
        GeomarkConfigError: If the file is unreadable or has another extension.
    """
    path = Path(path)
    try:
        match path.suffix.lower():
            case ".toml":
                with path.open("rb") as f:
                    return tomllib.load(f)
            case ".json":
                return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise GeomarkConfigError("Cannot read config file", path=str(path), error=str(e))
    raise GeomarkConfigError("Config file must be .toml or .json", path=str(path))


def resolve_config(
    path: Optional[Path] = None,
    preset: Optional[Preset] = None,
    mark: Optional[MarkModel | str] = None,
    **overrides: Any,
) -> ExperimentConfig:
    """Build the experiment config from preset, mark preset, file and overrides.

    Args:
        path: Optional TOML/JSON file with any subset of ``ExperimentConfig`` fields.
        preset: Scale preset applied before the file.
        mark: Mark model; takes precedence over the file's ``mark``.
        **overrides: Top-level fields set last; ``None`` values are ignored.

    Raises:
        GeomarkConfigError: If the merged values do not validate.
    """
    from_file = read_config_file(path) if path is not None else {}
    if preset is not None and preset not in SCALE_PRESETS:
        raise GeomarkConfigError("Unknown preset", preset=preset)
    try:
        model = MarkModel(mark or from_file.get("mark", MarkModel.SHOT_NOISE))
    except ValueError:
        raise GeomarkConfigError("Unknown mark model", mark=mark or from_file.get("mark"))

    values: dict[str, Any] = {}
    if preset is not None:
        values = _merge(values, SCALE_PRESETS[preset])
    values = _merge(values, MARK_PRESETS[model])
    values = _merge(values, from_file)
    values = _merge(values, {k: v for k, v in overrides.items() if v is not None})
    values["mark"] = model
    try:
        return ExperimentConfig.model_validate(values)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors()
        )
        raise GeomarkConfigError("Invalid experiment config", errors=details)


def dump_config(cfg: ExperimentConfig) -> str:
    """Indented JSON of every config field."""
    return cfg.model_dump_json(indent=2)


def save_config(cfg: ExperimentConfig, path: Path) -> Path:
    """Write the resolved config next to the run outputs."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_config(cfg) + "\n", encoding="utf-8")
    return path


def load_config(path: Path) -> ExperimentConfig:
    """Read a config written by ``save_config`` (or any complete config file)."""
    return resolve_config(path)

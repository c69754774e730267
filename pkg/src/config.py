"""Process-level configuration settings (environment and ``.env``)."""

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuration settings for the application.

    Experiment parameters live in ``harness.experiment.ExperimentConfig``; this class only
    holds what depends on the machine running the experiment.
    """

    service_name: str = "geomark"
    otlp_endpoint: str | None = None
    geomark_threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    geomark_out: str = "runs"
    model_config = SettingsConfigDict(
        env_file=".env",
        extra="ignore",
        hide_input_in_errors=True,
    )


settings = Settings()

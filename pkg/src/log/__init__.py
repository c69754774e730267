"""A module for logging configuration."""

from .logger import get_logger, handle_external_dep_logger, setup_logging

__all__ = ["get_logger", "handle_external_dep_logger", "setup_logging"]

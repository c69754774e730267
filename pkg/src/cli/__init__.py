"""Command-line interface."""

from .commands import dispatch
from .parser import build_parser

__all__ = ["build_parser", "dispatch"]

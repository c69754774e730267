"""Exception hierarchy shared by every geomark module."""

from typing import Any


class GeomarkError(Exception):
    """Base class for all errors raised by geomark.

    Args:
        message: Human readable description.
        **context: Structured fields (pattern_id, pixel, ...) forwarded to the logs.
    """

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context: dict[str, Any] = dict(context)

    def with_context(self, **context: Any) -> "GeomarkError":
        """Attach more structured context and return self for re-raising."""
        self.context.update(context)
        return self

    def __str__(self) -> str:
        base = super().__str__()
        if not self.context:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{base} ({details})"


class DomainError(GeomarkError, ValueError):
    """Input outside the mathematical domain of an operation."""


class InsufficientDataError(DomainError):
    """Not enough points or samples to run an operation."""


class CollisionError(DomainError):
    """Two pattern points fall in the same raster pixel."""


class GeomarkConfigError(GeomarkError, ValueError):
    """Invalid configuration value."""


class ShapeError(GeomarkError, ValueError):
    """Array dimensions do not match."""


class NumericalError(GeomarkError, ArithmeticError):
    """A numerical procedure produced a non-finite value or failed to make progress."""

"""A module containing logging filters."""

from .otel_trace_filter import OTelTraceFilter

__all__ = ["OTelTraceFilter"]

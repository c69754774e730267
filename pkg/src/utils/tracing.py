"""OpenTelemetry trace context helpers.

Every pipeline stage runs inside a span (see ``telemetry.stage``); these helpers read the
active span so log records and reports can carry its identifiers.
"""

from typing import Optional

from opentelemetry import trace


def _span_context():
    span = trace.get_current_span()
    if span is None:
        return None
    context = span.get_span_context()
    return context if context.is_valid else None


def get_trace_id() -> Optional[str]:
    """Get the current trace ID as a 32-char hex string, or None outside any span.

    Example:
        >>> get_trace_id()
        '4bf92f3577b34da6a3ce929d0e0e4736'
    """
    context = _span_context()
    return format(context.trace_id, "032x") if context else None


def get_span_id() -> Optional[str]:
    """Get the current span ID as a 16-char hex string, or None outside any span."""
    context = _span_context()
    return format(context.span_id, "016x") if context else None


def get_trace_context() -> dict:
    """Get both trace_id and span_id as a dictionary.

    Stamped into ``metrics.json`` so a run's outputs can be matched with its trace.
    """
    return {
        "trace_id": get_trace_id(),
        "span_id": get_span_id(),
    }

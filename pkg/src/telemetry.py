"""OpenTelemetry instrumentation and stage tracing for experiment runs."""

import time
from contextlib import contextmanager
from typing import Any, Iterator

from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

from log import get_logger
from utils.constants import APP_NAME

logger = get_logger()
tracer = trace.get_tracer(APP_NAME)


def setup_instrumentation(service_name: str, otlp_endpoint: str | None = None):
    """Set up the OpenTelemetry tracer provider for a CLI run.

    Args:
        service_name: Name of the service for OpenTelemetry resource
        otlp_endpoint: Optional OTLP collector endpoint for trace export
    """
    resource = Resource.create({"service.name": service_name})
    tracer_provider = TracerProvider(resource=resource)
    trace.set_tracer_provider(tracer_provider)

    if otlp_endpoint:
        logger.info(
            "Configuring OTLP exporter for OpenTelemetry",
            extra={"otlp_endpoint": otlp_endpoint},
        )
        otlp_exporter = OTLPSpanExporter(endpoint=f"{otlp_endpoint.rstrip('/')}/v1/traces")
        tracer_provider.add_span_processor(BatchSpanProcessor(otlp_exporter))
    else:
        logger.debug("OTLP endpoint not provided, skipping OTLP trace exporter setup.")


def shutdown_instrumentation():
    """Shutdown instrumentation and flush remaining traces."""
    tracer_provider = trace.get_tracer_provider()
    if isinstance(tracer_provider, TracerProvider):
        tracer_provider.force_flush()
        tracer_provider.shutdown()
        logger.debug("Traces flushed successfully")


@contextmanager
def stage(name: str, **fields: Any) -> Iterator[trace.Span]:
    """Run a pipeline stage inside a span, logging its start, completion and duration.

    Args:
        name: Stage name (``generate``, ``scatter``, ``train`` ...).
        **fields: Extra attributes recorded on the span and in the log lines.

    Yields:
        The active span, so callers can add attributes as results become known.
    """
    start_time = time.perf_counter()
    with tracer.start_as_current_span(f"{APP_NAME}.{name}") as span:
        for key, value in fields.items():
            if isinstance(value, (str, bool, int, float)):
                span.set_attribute(key, value)
        logger.info("Stage started", extra={"stage": name, **fields})
        try:
            yield span
        except Exception as e:
            logger.error(
                "Stage failed",
                extra={
                    "stage": name,
                    "error": str(e),
                    "elapsed_ms": round((time.perf_counter() - start_time) * 1000, 2),
                },
            )
            raise
        logger.info(
            "Stage completed",
            extra={
                "stage": name,
                "elapsed_ms": round((time.perf_counter() - start_time) * 1000, 2),
            },
        )

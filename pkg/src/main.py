"""Application entry point."""

import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from cli import build_parser, dispatch
from config import settings
from log import get_logger, handle_external_dep_logger
from telemetry import setup_instrumentation, shutdown_instrumentation
from utils.constants import (
    APP_VERSION,
    EXIT_CONFIG_ERROR,
    EXIT_FAILURE,
    EXIT_NUMERICAL_ERROR,
    EXIT_OK,
)
from utils.errors import GeomarkError, NumericalError

logger = get_logger()
handle_external_dep_logger("matplotlib")
handle_external_dep_logger("opentelemetry.attributes")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse the command line, run the subcommand and map failures to exit codes.

    Returns:
        0 on success, 2 on configuration or input errors, 3 on numerical failures,
        1 on anything unexpected.
    """
    args = build_parser().parse_args(argv)
    setup_instrumentation(settings.service_name, settings.otlp_endpoint)
    logger.info(
        "geomark starting",
        extra={
            "version": APP_VERSION,
            "command": args.command,
            "otel_endpoint": settings.otlp_endpoint,
        },
    )
    try:
        dispatch(args)
        return EXIT_OK
    except NumericalError as e:
        logger.error("Numerical failure", extra={"error": str(e), **_context(e)})
        return EXIT_NUMERICAL_ERROR
    except (GeomarkError, ValidationError) as e:
        logger.error("Invalid configuration or input", extra={"error": str(e), **_context(e)})
        return EXIT_CONFIG_ERROR
    except Exception as e:
        logger.exception("Unexpected error", extra={"error": str(e)})
        return EXIT_FAILURE
    finally:
        shutdown_instrumentation()


def _context(e: Exception) -> dict:
    return dict(e.context) if isinstance(e, GeomarkError) else {}


if __name__ == "__main__":
    sys.exit(main())

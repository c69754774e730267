"""Custom log formatters for JSON."""

import json
import logging
from typing import Any, Dict

from .fields import extra_fields


class JsonLineFormatter(logging.Formatter):
    """Outputs every log record as one JSON line.

    Selected with ``LOG_FORMAT=json``; long experiment runs are easier to grep and
    aggregate this way.

    Example output:
    {
      "time": "2026-01-08T10:30:45",
      "level": "INFO",
      "logger": "geomark",
      "message": "Stage completed",
      "stage": "scatter",
      "elapsed_ms": 81234.5,
      "trace_id": "xyz-789"
    }
    """

    def format(self, record: logging.LogRecord) -> str:
        """Format the log record as a JSON line.

        Args:
            record: The log record to format.

        Returns:
            A JSON string representing the log record.
        """
        payload: Dict[str, Any] = {
            "time": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        for k, v in extra_fields(record):
            try:
                json.dumps(v)
                payload[k] = v
            except (TypeError, ValueError):
                payload[k] = str(v)

        if record.exc_info:
            payload["err"] = self.formatException(record.exc_info)

        return json.dumps(payload, ensure_ascii=False)

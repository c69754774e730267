"""Helpers shared by the formatters to turn log record extras into plain values."""

import logging
from typing import Any, Iterator, Tuple

import numpy as np

# Standard LogRecord attributes that we don't want to include as extras
STD_ATTRS = set(vars(logging.LogRecord("", 0, "", 0, "", (), None)).keys()) | {"msg", "args"}


def plain(value: Any) -> Any:
    """Convert numpy scalars and small arrays to builtins so they serialize cleanly."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist() if value.size <= 64 else f"<array shape={value.shape}>"
    if isinstance(value, (tuple, set)):
        return [plain(v) for v in value]
    return value


def extra_fields(record: logging.LogRecord) -> Iterator[Tuple[str, Any]]:
    """Yield the ``extra={...}`` fields attached to a record."""
    for k, v in record.__dict__.items():
        if k in STD_ATTRS:
            continue
        yield k, plain(v)

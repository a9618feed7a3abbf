"""Common models shared across services."""

import csv
import io
from collections.abc import Iterable
from datetime import UTC, datetime
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, Field


class ClassLabel(StrEnum):
    """Diagnostic classes of the PTB diagnostic database, in report order."""

    MI = "MI"
    VHD = "VHD"
    DY = "DY"
    BBB = "BBB"
    CH = "CH"
    HC = "HC"


# Conventional 12 leads, lower-case as stored in PTB headers.
STANDARD_LEADS: tuple[str, ...] = (
    "i", "ii", "iii", "avr", "avl", "avf", "v1", "v2", "v3", "v4", "v5", "v6",
)
FRANK_LEADS: tuple[str, ...] = ("vx", "vy", "vz")

UNLABELED = "unlabeled"


def order_classes(labels: Iterable[str]) -> tuple[str, ...]:
    """Deduplicate labels into report order: known classes first, then alphabetical."""
    known = [label.value for label in ClassLabel]
    unique = set(labels)
    head = [label for label in known if label in unique]
    tail = sorted(unique.difference(known))
    return tuple(head + tail)


class ErrorResponse(BaseModel):
    """Single-line error report written to standard error by the CLI."""

    error: str = Field(..., description="Error code")
    message: str = Field(..., description="Human-readable error message")
    exit_code: int = Field(..., description="Process exit code")
    details: dict[str, Any] = Field(default_factory=dict, description="Error context")
    timestamp: datetime = Field(
        default_factory=lambda: datetime.now(UTC), description="Error timestamp"
    )


def format_float(value: float | None, digits: int | None = 10) -> str:
    """Render a float for CSV output; ``None`` renders as ``n/a``.

    ``digits=None`` uses the shortest representation that round-trips exactly.
    """
    if value is None:
        return "n/a"
    if digits is None:
        return repr(float(value))
    return f"{float(value):.{digits}g}"


def render_csv(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    """Render rows as CSV text with ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    writer.writerows(rows)
    return buffer.getvalue()

"""Features file: one row per record and lead."""

import csv
import io
from collections.abc import Iterable
from pathlib import Path

from core.errors import InvalidRecord, MalformedHeader, NonNumericCell
from core.models.common import render_csv
from core.models.dynamics import FEATURE_COLUMNS, FeatureVector, LeadFeatures


def render_features_csv(vectors: Iterable[FeatureVector], digits: int = 10) -> str:
    rows = [row for vector in vectors for row in vector.to_rows(digits)]
    return render_csv(FEATURE_COLUMNS, rows)


def parse_features_csv(text: str) -> list[FeatureVector]:
    """
    Group feature rows by record, keeping first-appearance order.

    Raises:
        MalformedHeader: Columns differ from the features layout
        NonNumericCell: A feature value is not a number
        InvalidRecord: One record carries two labels or repeats a lead
    """
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(cell.strip() for cell in header) != FEATURE_COLUMNS:
        raise MalformedHeader(f"features file must have columns {','.join(FEATURE_COLUMNS)}")

    labels: dict[str, str] = {}
    leads: dict[str, dict[str, LeadFeatures]] = {}
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(FEATURE_COLUMNS):
            raise MalformedHeader(f"features row {line_no} has {len(row)} cells")
        record_id, label, lead = (cell.strip() for cell in row[:3])
        try:
            values = [float(cell) for cell in row[3:]]
        except ValueError as e:
            raise NonNumericCell(f"features row {line_no}: {e}", line=line_no) from e
        if labels.setdefault(record_id, label) != label:
            raise InvalidRecord(f"record {record_id!r} has conflicting labels")
        per_record = leads.setdefault(record_id, {})
        if lead in per_record:
            raise InvalidRecord(f"record {record_id!r} repeats lead {lead!r}")
        per_record[lead] = LeadFeatures(lead, *values)

    return [
        FeatureVector(record_id, labels[record_id], tuple(per_record.values()))
        for record_id, per_record in leads.items()
    ]


def write_features_csv(vectors: Iterable[FeatureVector], path: Path, digits: int = 10) -> Path:
    path = Path(path)
    path.write_text(render_features_csv(vectors, digits), encoding="utf-8")
    return path


def read_features_csv(path: Path) -> list[FeatureVector]:
    return parse_features_csv(Path(path).read_text(encoding="utf-8"))

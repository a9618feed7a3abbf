"""CSV waveform records: one column per lead, one sample per row."""

import csv
import io

import numpy as np

from core.errors import InvalidRecord, NonNumericCell, RaggedRows
from core.models.common import UNLABELED, format_float, render_csv
from core.models.signal import LeadSignal, SignalRecord


def parse_csv(
    text: str,
    fs: float,
    label: str = UNLABELED,
    record_id: str = "csv",
) -> SignalRecord:
    """
    Parse CSV text whose header row names the leads.

    Raises:
        RaggedRows: A row has a different number of cells than the header
        NonNumericCell: A body cell is not a finite number
        InvalidRecord: No header, or fewer than two samples
    """
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows:
        raise InvalidRecord(f"record {record_id!r}: CSV has no header row")
    names = [cell.strip().lower() for cell in rows[0]]

    values = np.empty((len(rows) - 1, len(names)), dtype=np.float64)
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(names):
            raise RaggedRows(
                f"record {record_id!r}: row {line_no} has {len(row)} cells, expected {len(names)}",
                line=line_no,
            )
        for column, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError:
                value = float("nan")
            if not np.isfinite(value):
                raise NonNumericCell(
                    f"record {record_id!r}: row {line_no} column {names[column]!r} "
                    f"holds {cell!r}",
                    line=line_no,
                    column=names[column],
                )
            values[line_no - 2, column] = value

    leads = tuple(LeadSignal(name, values[:, k]) for k, name in enumerate(names))
    return SignalRecord(record_id, fs, leads, label)


def emit_csv(record: SignalRecord) -> str:
    """Inverse of parse_csv, using the shortest exact float representation."""
    columns = [lead.samples for lead in record.leads]
    rows = (
        [format_float(value, None) for value in sample]
        for sample in zip(*columns, strict=True)
    )
    return render_csv(record.lead_names, rows)

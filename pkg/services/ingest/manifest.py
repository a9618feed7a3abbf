"""Record manifests: which records form a corpus, and their labels."""

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from core.errors import MalformedManifest
from core.models.common import render_csv
from core.models.signal import SignalRecord
from services.ingest.csv_records import parse_csv
from services.ingest.wfdb import read_record

REQUIRED_COLUMNS = ("record_id", "label")


@dataclass(frozen=True)
class ManifestEntry:
    """One manifest row with its record path resolved.

    ``path`` has no extension for WFDB records and ends in ``.csv`` for CSV
    records. ``subject`` groups records of one person for subject-level folds.
    """

    record_id: str
    label: str
    path: Path
    subject: str | None = None


def parse_manifest(text: str, base_dir: Path = Path(".")) -> list[ManifestEntry]:
    """
    Parse manifest CSV text; relative record paths resolve against ``base_dir``.

    Raises:
        MalformedManifest: Missing columns, empty ids or labels, duplicate ids
    """
    reader = csv.DictReader(io.StringIO(text))
    columns = [name.strip() for name in reader.fieldnames or []]
    missing = [name for name in REQUIRED_COLUMNS if name not in columns]
    if missing:
        raise MalformedManifest(f"manifest lacks columns {missing}", columns=columns)

    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(reader, start=2):
        row = {key.strip(): (value or "").strip() for key, value in raw.items() if key}
        record_id, label = row.get("record_id", ""), row.get("label", "")
        if not record_id or not label:
            raise MalformedManifest(f"manifest row {line_no}: record_id and label are required")
        if record_id in seen:
            raise MalformedManifest(f"manifest row {line_no}: duplicate record_id {record_id!r}")
        seen.add(record_id)
        path = Path(row.get("path") or record_id)
        entries.append(
            ManifestEntry(
                record_id=record_id,
                label=label,
                path=path if path.is_absolute() else base_dir / path,
                subject=row.get("subject") or None,
            )
        )
    return entries


def read_manifest(path: Path) -> list[ManifestEntry]:
    path = Path(path)
    return parse_manifest(path.read_text(encoding="utf-8"), path.parent)


def write_manifest(entries: list[ManifestEntry], path: Path) -> Path:
    """Write entries with record paths relative to the manifest's directory."""
    path = Path(path)
    with_subject = any(entry.subject for entry in entries)
    header = ["record_id", "label", "path"] + (["subject"] if with_subject else [])
    rows = []
    for entry in entries:
        try:
            record_path = entry.path.relative_to(path.parent)
        except ValueError:
            record_path = entry.path
        row = [entry.record_id, entry.label, record_path.as_posix()]
        if with_subject:
            row.append(entry.subject or "")
        rows.append(row)
    path.write_text(render_csv(header, rows), encoding="utf-8")
    return path


def load_record(entry: ManifestEntry, csv_fs: float = 1000.0) -> SignalRecord:
    """Read the record behind a manifest entry, labelled and named by the manifest."""
    if entry.path.suffix.lower() == ".csv":
        return parse_csv(
            entry.path.read_text(encoding="utf-8"), csv_fs, entry.label, entry.record_id
        )
    record = read_record(entry.path, entry.label)
    return SignalRecord(entry.record_id, record.fs, record.leads, entry.label)

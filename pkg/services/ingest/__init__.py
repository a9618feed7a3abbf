"""Waveform ingestion: WFDB format 16, CSV, manifests and HTTP fetch."""

from services.ingest.csv_records import emit_csv, parse_csv
from services.ingest.fetch import RetryConfig, calculate_backoff_delay, fetch_file
from services.ingest.manifest import (
    ManifestEntry,
    load_record,
    parse_manifest,
    read_manifest,
    write_manifest,
)
from services.ingest.wfdb import (
    RecordHeader,
    SignalSpec,
    decode_raw,
    encode_raw,
    encode_record,
    parse_header,
    parse_signals,
    read_record,
    write_record,
)

__all__ = [
    "ManifestEntry",
    "RecordHeader",
    "RetryConfig",
    "SignalSpec",
    "calculate_backoff_delay",
    "decode_raw",
    "emit_csv",
    "encode_raw",
    "encode_record",
    "fetch_file",
    "load_record",
    "parse_csv",
    "parse_header",
    "parse_manifest",
    "parse_signals",
    "read_manifest",
    "read_record",
    "write_manifest",
    "write_record",
]

"""WFDB header and format-16 signal codec.

Only the subset of WFDB used by the PTB diagnostic database is supported:
single-segment records whose signals all live in one ``.dat`` file stored as
little-endian 16-bit integers interleaved by signal.
"""

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from core.errors import MalformedHeader, MissingSamples, TruncatedData, UnsupportedFormat
from core.logging import get_logger
from core.models.common import UNLABELED
from core.models.signal import LeadSignal, SignalRecord

logger = get_logger(__name__)

DEFAULT_GAIN = 200.0
INVALID_SAMPLE = -32768
RAW_MIN, RAW_MAX = -32767, 32767

_FORMAT_TOKEN = re.compile(r"^(?P<code>\d+)(?P<spf>x\d+)?(?P<skew>:\d+)?(?P<offset>\+\d+)?$")
_GAIN_TOKEN = re.compile(r"^(?P<gain>[^()/]+)(?:\((?P<baseline>[^)]*)\))?(?:/(?P<units>.+))?$")


@dataclass(frozen=True)
class SignalSpec:
    """One signal line of a header."""

    file_name: str
    format_code: int
    gain: float
    baseline: int
    units: str
    name: str


@dataclass(frozen=True)
class RecordHeader:
    """Parsed header file."""

    record_id: str
    n_signals: int
    fs: float
    n_samples: int
    signals: tuple[SignalSpec, ...]

    @property
    def file_name(self) -> str:
        return self.signals[0].file_name


def _int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise MalformedHeader(f"line {line_no}: {what} {token!r} is not an integer") from e


def _float(token: str, what: str, line_no: int) -> float:
    try:
        return float(token)
    except ValueError as e:
        raise MalformedHeader(f"line {line_no}: {what} {token!r} is not a number") from e


def _parse_signal_line(tokens: list[str], index: int, line_no: int) -> SignalSpec:
    if len(tokens) < 2:
        raise MalformedHeader(f"line {line_no}: signal line needs FILE and FORMAT")
    file_name, format_token = tokens[0], tokens[1]

    match = _FORMAT_TOKEN.match(format_token)
    if match is None:
        raise MalformedHeader(f"line {line_no}: bad format token {format_token!r}")
    code = int(match["code"])
    if code != 16 or match["spf"] or match["skew"] or match["offset"]:
        raise UnsupportedFormat(
            f"signal {index}: format {format_token!r} is not supported (format 16 only)",
            format=format_token,
        )

    gain, baseline, units = DEFAULT_GAIN, None, "mV"
    if len(tokens) > 2:
        gain_match = _GAIN_TOKEN.match(tokens[2])
        if gain_match is None:
            raise MalformedHeader(f"line {line_no}: bad gain token {tokens[2]!r}")
        gain = _float(gain_match["gain"], "gain", line_no)
        if gain_match["baseline"] is not None:
            baseline = _int(gain_match["baseline"], "baseline", line_no)
        if gain_match["units"]:
            units = gain_match["units"]
        if gain == 0:
            gain = DEFAULT_GAIN
        if gain < 0:
            raise MalformedHeader(f"line {line_no}: negative gain {gain}")
    if baseline is None:
        # ADC zero (token 5) stands in for a missing baseline
        baseline = _int(tokens[4], "adc zero", line_no) if len(tokens) > 4 else 0

    name = " ".join(tokens[8:]).lower() if len(tokens) > 8 else f"sig{index}"
    return SignalSpec(file_name, code, gain, baseline, units, name)


def parse_header(text: str) -> RecordHeader:
    """
    Parse the text of a ``.hea`` file.

    Raises:
        MalformedHeader: Missing or non-numeric fields, or signal count mismatch
        UnsupportedFormat: Any signal not stored as plain format 16, or signals
            spread over more than one file
    """
    lines = [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise MalformedHeader("header is empty")

    line_no, record_line = lines[0]
    tokens = record_line.split()
    if len(tokens) < 4:
        raise MalformedHeader(f"line {line_no}: record line needs RECORD NSIG FS NSAMP")
    record_id = tokens[0].split("/")[0]
    n_signals = _int(tokens[1], "signal count", line_no)
    fs = _float(tokens[2].split("/")[0], "sampling frequency", line_no)
    n_samples = _int(tokens[3], "sample count", line_no)
    if n_signals < 1 or fs <= 0 or n_samples < 0:
        raise MalformedHeader(f"line {line_no}: invalid record line {record_line!r}")

    signal_lines = lines[1:]
    if len(signal_lines) != n_signals:
        raise MalformedHeader(
            f"header declares {n_signals} signals but has {len(signal_lines)} signal lines"
        )
    signals = tuple(
        _parse_signal_line(line.split(), index, number)
        for index, (number, line) in enumerate(signal_lines)
    )
    files = {spec.file_name for spec in signals}
    if len(files) != 1:
        raise UnsupportedFormat(f"signals are spread over several files: {sorted(files)}")

    return RecordHeader(record_id, n_signals, fs, n_samples, signals)


def decode_raw(data: bytes, header: RecordHeader) -> np.ndarray:
    """Return raw ADC values as an (n_samples, n_signals) int16 array."""
    expected = 2 * header.n_signals * header.n_samples
    if len(data) != expected:
        raise TruncatedData(
            f"record {header.record_id!r}: expected {expected} bytes, got {len(data)}",
            expected=expected,
            actual=len(data),
        )
    return np.frombuffer(data, dtype="<i2").reshape(header.n_samples, header.n_signals)


def parse_signals(data: bytes, header: RecordHeader, label: str = UNLABELED) -> SignalRecord:
    """
    Decode a format-16 ``.dat`` payload into a SignalRecord in mV.

    Raises:
        TruncatedData: Payload length disagrees with the header
        MissingSamples: A sample holds the invalid-sample marker -32768
    """
    raw = decode_raw(data, header)
    invalid = np.argwhere(raw == INVALID_SAMPLE)
    if invalid.size:
        sample, signal = (int(v) for v in invalid[0])
        raise MissingSamples(
            f"record {header.record_id!r}: lead {header.signals[signal].name!r} has "
            f"{len(invalid)} invalid samples (first at {sample})",
            lead=header.signals[signal].name,
            sample=sample,
        )

    leads = tuple(
        LeadSignal(
            name=spec.name,
            samples=(raw[:, k].astype(np.float64) - spec.baseline) / spec.gain,
            gain=spec.gain,
            baseline=spec.baseline,
        )
        for k, spec in enumerate(header.signals)
    )
    record = SignalRecord(header.record_id, header.fs, leads, label)
    logger.debug(
        "record_parsed",
        record_id=record.record_id,
        n_signals=header.n_signals,
        n_samples=header.n_samples,
    )
    return record


def encode_raw(record: SignalRecord) -> np.ndarray:
    """Quantize every lead to ADC units; values beyond the format range are clipped."""
    columns = []
    for lead in record.leads:
        raw = np.rint(lead.samples * lead.gain + lead.baseline)
        clipped = np.clip(raw, RAW_MIN, RAW_MAX)
        if np.any(clipped != raw):
            logger.warning(
                "samples_clipped",
                record_id=record.record_id,
                lead=lead.name,
                count=int(np.count_nonzero(clipped != raw)),
            )
        columns.append(clipped.astype(np.int16))
    return np.column_stack(columns)


def _checksum(values: np.ndarray) -> int:
    total = int(values.astype(np.int64).sum()) & 0xFFFF
    return total - 0x10000 if total >= 0x8000 else total


def encode_record(record: SignalRecord, file_name: str | None = None) -> tuple[str, bytes]:
    """Encode a record as (header text, format-16 payload)."""
    file_name = file_name or f"{record.record_id}.dat"
    raw = encode_raw(record)
    lines = [f"{record.record_id} {len(record.leads)} {record.fs:.12g} {record.duration_samples}"]
    for k, lead in enumerate(record.leads):
        column = raw[:, k]
        lines.append(
            f"{file_name} 16 {lead.gain:.12g}({lead.baseline})/mV 16 {lead.baseline} "
            f"{int(column[0])} {_checksum(column)} 0 {lead.name}"
        )
    return "\n".join(lines) + "\n", raw.astype("<i2").tobytes()


def write_record(record: SignalRecord, directory: Path) -> Path:
    """Write ``<id>.hea`` and ``<id>.dat``; returns the record path without extension."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    header_text, payload = encode_record(record)
    base = directory / record.record_id
    base.with_name(f"{record.record_id}.hea").write_text(header_text, encoding="utf-8")
    base.with_name(f"{record.record_id}.dat").write_bytes(payload)
    return base


def read_record(path: Path, label: str = UNLABELED) -> SignalRecord:
    """Read a record given its path without extension (``dir/s0010_re``)."""
    path = Path(path)
    header = parse_header(path.with_name(f"{path.name}.hea").read_text(encoding="utf-8"))
    payload = (path.parent / header.file_name).read_bytes()
    return parse_signals(payload, header, label)

"""Tests for the WFDB header and format-16 codec."""

import numpy as np
import pytest

from core.errors import MalformedHeader, MissingSamples, TruncatedData, UnsupportedFormat
from core.models.signal import LeadSignal, SignalRecord
from services.ingest.wfdb import (
    DEFAULT_GAIN,
    decode_raw,
    encode_record,
    parse_header,
    parse_signals,
    read_record,
    write_record,
)

PTB_HEADER = """s0010_re 3 1000 4
s0010_re.dat 16 2000 16 0 -489 -8337 0 i
s0010_re.dat 16 2000(10)/mV 16 0 -458 -16369 0 ii
s0010_re.dat 16 0 16 5 34 -10355 0 iii
# age: 81
"""


def payload(rows) -> bytes:
    return np.asarray(rows, dtype="<i2").tobytes()


class TestParseHeader:
    """Test cases for parse_header."""

    def test_record_line(self):
        """Record line fields are parsed; comments are skipped."""
        header = parse_header(PTB_HEADER)
        assert header.record_id == "s0010_re"
        assert header.n_signals == 3
        assert header.fs == 1000.0
        assert header.n_samples == 4
        assert header.file_name == "s0010_re.dat"

    def test_signal_lines(self):
        """Gain, baseline and lead name per signal line."""
        signals = parse_header(PTB_HEADER).signals
        assert [s.name for s in signals] == ["i", "ii", "iii"]
        assert signals[0].gain == 2000.0
        assert signals[0].baseline == 0
        assert signals[1].baseline == 10

    def test_zero_gain_defaults(self):
        """Gain 0 means the default gain; baseline falls back to ADC zero."""
        spec = parse_header(PTB_HEADER).signals[2]
        assert spec.gain == DEFAULT_GAIN
        assert spec.baseline == 5

    def test_unnamed_signal(self):
        """Signals without a description are named by index."""
        header = parse_header("r 1 500 10\nr.dat 16\n")
        assert header.signals[0].name == "sig0"
        assert header.signals[0].gain == DEFAULT_GAIN

    def test_signal_count_mismatch(self):
        """Declared and actual signal lines must agree."""
        with pytest.raises(MalformedHeader):
            parse_header("r 2 500 10\nr.dat 16 200 16 0 0 0 0 i\n")

    def test_non_numeric_fs(self):
        """Non-numeric sampling frequency."""
        with pytest.raises(MalformedHeader):
            parse_header("r 1 fast 10\nr.dat 16\n")

    def test_empty(self):
        """An empty header is malformed."""
        with pytest.raises(MalformedHeader):
            parse_header("# only a comment\n")

    @pytest.mark.parametrize("fmt", ["212", "16x2", "16+24"])
    def test_unsupported_format(self, fmt):
        """Only plain format 16 is read."""
        with pytest.raises(UnsupportedFormat):
            parse_header(f"r 1 500 10\nr.dat {fmt} 200 16 0 0 0 0 i\n")

    def test_multiple_files(self):
        """All signals must share one data file."""
        with pytest.raises(UnsupportedFormat):
            parse_header("r 2 500 10\na.dat 16 200 16 0 0 0 0 i\nb.dat 16 200 16 0 0 0 0 ii\n")


class TestParseSignals:
    """Test cases for decoding format-16 payloads."""

    def test_physical_units(self):
        """Samples are (raw - baseline) / gain in mV."""
        header = parse_header(PTB_HEADER)
        record = parse_signals(
            payload([[2000, 10, 5], [-2000, 2010, 205], [0, 10, 5], [1000, 10, 5]]), header, "MI"
        )
        assert record.label == "MI"
        assert record.lead("i").samples.tolist() == [1.0, -1.0, 0.0, 0.5]
        assert record.lead("ii").samples.tolist() == [0.0, 1.0, 0.0, 0.0]
        assert record.lead("iii").samples.tolist() == [0.0, 1.0, 0.0, 0.0]

    def test_interleaved_layout(self):
        """decode_raw reshapes sample-major interleaved values."""
        header = parse_header(PTB_HEADER)
        raw = decode_raw(payload(np.arange(12).reshape(4, 3)), header)
        assert raw[:, 0].tolist() == [0, 3, 6, 9]

    def test_truncated(self):
        """Payload length must match the header."""
        header = parse_header(PTB_HEADER)
        with pytest.raises(TruncatedData):
            parse_signals(payload([[0, 0, 0]] * 3), header)

    def test_invalid_sample_marker(self):
        """-32768 marks a missing sample."""
        header = parse_header(PTB_HEADER)
        rows = [[0, 0, 0]] * 4
        rows[2] = [0, -32768, 0]
        with pytest.raises(MissingSamples) as exc_info:
            parse_signals(payload(rows), header)
        assert exc_info.value.context["lead"] == "ii"
        assert exc_info.value.context["sample"] == 2


class TestWriteRecord:
    """Test cases for encoding and writing records."""

    def make_record(self) -> SignalRecord:
        t = np.arange(50) / 500.0
        return SignalRecord(
            "synth01",
            500.0,
            (
                LeadSignal("i", np.sin(2 * np.pi * t), gain=2000.0),
                LeadSignal("v1", 0.5 * np.cos(2 * np.pi * t), gain=2000.0),
            ),
            "HC",
        )

    def test_write_and_read(self, tmp_path):
        """Written records read back within one quantization step."""
        record = self.make_record()
        base = write_record(record, tmp_path)
        assert (tmp_path / "synth01.hea").is_file()
        assert (tmp_path / "synth01.dat").is_file()

        again = read_record(base, "HC")
        assert again.fs == 500.0
        assert again.lead_names == ("i", "v1")
        for original, decoded in zip(record.leads, again.leads, strict=True):
            assert np.max(np.abs(original.samples - decoded.samples)) <= 0.5 / 2000.0 + 1e-12

    def test_header_text(self):
        """Encoded header lists one format-16 line per lead."""
        text, data = encode_record(self.make_record())
        lines = text.splitlines()
        assert lines[0] == "synth01 2 500 50"
        assert lines[1].startswith("synth01.dat 16 2000(0)/mV")
        assert lines[2].endswith(" v1")
        assert len(data) == 2 * 2 * 50

    def test_clipping(self):
        """Out-of-range values are clipped to the format range."""
        record = SignalRecord("big", 500.0, (LeadSignal("i", [100.0, -100.0], gain=2000.0),))
        _, data = encode_record(record)
        assert np.frombuffer(data, dtype="<i2").tolist() == [32767, -32767]

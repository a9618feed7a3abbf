"""Tests for record manifests."""

from pathlib import Path

import numpy as np
import pytest

from core.errors import MalformedManifest
from core.models.signal import LeadSignal, SignalRecord
from services.ingest.manifest import (
    ManifestEntry,
    load_record,
    parse_manifest,
    read_manifest,
    write_manifest,
)
from services.ingest.wfdb import write_record


class TestParseManifest:
    """Test cases for parse_manifest."""

    def test_paths_resolve_against_base(self, tmp_path):
        """Relative paths resolve against the manifest directory; path defaults to the id."""
        entries = parse_manifest(
            "record_id,label,path\nr1,MI,records/r1\nr2,HC,\n", base_dir=tmp_path
        )
        assert entries[0] == ManifestEntry("r1", "MI", tmp_path / "records/r1")
        assert entries[1].path == tmp_path / "r2"
        assert entries[1].subject is None

    def test_subject_column(self):
        """Optional subject column is read."""
        entries = parse_manifest("record_id,label,subject\nr1,MI,patient001\n")
        assert entries[0].subject == "patient001"

    def test_missing_column(self):
        """label is required."""
        with pytest.raises(MalformedManifest):
            parse_manifest("record_id,path\nr1,x\n")

    def test_duplicate_ids(self):
        """record_id is unique."""
        with pytest.raises(MalformedManifest):
            parse_manifest("record_id,label\nr1,MI\nr1,HC\n")

    def test_empty_label(self):
        """Empty labels are rejected."""
        with pytest.raises(MalformedManifest):
            parse_manifest("record_id,label\nr1,\n")


class TestWriteManifest:
    """Test cases for write_manifest."""

    def test_relative_paths(self, tmp_path):
        """Paths are written relative to the manifest and read back resolved."""
        entries = [
            ManifestEntry("r1", "MI", tmp_path / "records" / "r1", "p1"),
            ManifestEntry("r2", "HC", tmp_path / "records" / "r2"),
        ]
        path = write_manifest(entries, tmp_path / "manifest.csv")
        assert path.read_text().splitlines()[1] == "r1,MI,records/r1,p1"
        again = read_manifest(path)
        assert [e.path for e in again] == [e.path for e in entries]
        assert again[1].subject is None


class TestLoadRecord:
    """Test cases for load_record."""

    def test_wfdb_entry(self, tmp_path):
        """WFDB records take id and label from the manifest."""
        record = SignalRecord("stored", 500.0, (LeadSignal("i", np.zeros(10)),))
        base = write_record(record, tmp_path)
        loaded = load_record(ManifestEntry("alias", "MI", base))
        assert loaded.record_id == "alias"
        assert loaded.label == "MI"
        assert loaded.fs == 500.0

    def test_csv_entry(self, tmp_path: Path):
        """CSV records use the configured sampling rate."""
        path = tmp_path / "c1.csv"
        path.write_text("ii\n0\n1\n2\n")
        loaded = load_record(ManifestEntry("c1", "HC", path), csv_fs=250.0)
        assert loaded.fs == 250.0
        assert loaded.lead("ii").samples.tolist() == [0.0, 1.0, 2.0]

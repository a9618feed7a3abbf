"""Tests for lead selection and report lead sets."""

import numpy as np
import pytest

from core.errors import UnknownLeadSet
from core.models.common import STANDARD_LEADS
from services.pipeline.lead_sets import (
    ALL_TWELVE,
    LeadSet,
    feature_matrix,
    parse_lead_selection,
    resolve_lead_sets,
)
from tests.fixtures.records import feature_vector


class TestParseLeadSelection:
    """Test cases for parse_lead_selection."""

    @pytest.mark.parametrize("selection", ["all12", "table", " ALL12 "])
    def test_standard(self, selection):
        assert parse_lead_selection(selection) == STANDARD_LEADS

    def test_all(self):
        """``all`` keeps every lead of each record."""
        assert parse_lead_selection("all") is None

    def test_list(self):
        assert parse_lead_selection("vx, VY,,vz") == ("vx", "vy", "vz")


class TestResolveLeadSets:
    """Test cases for resolve_lead_sets."""

    def test_table(self):
        """Twelve single leads, the limb leads, then all twelve."""
        sets = resolve_lead_sets("table", STANDARD_LEADS)
        assert len(sets) == 14
        assert [s.name for s in sets[:4]] == ["I", "II", "III", "aVR"]
        assert sets[12] == LeadSet("I, II, III combined", ("i", "ii", "iii"))
        assert sets[13] == LeadSet(ALL_TWELVE, STANDARD_LEADS)

    def test_single_lead(self):
        assert resolve_lead_sets("avf", STANDARD_LEADS) == [LeadSet("aVF", ("avf",))]

    def test_frank_leads(self):
        """Frank leads form one combined row."""
        [lead_set] = resolve_lead_sets("vx,vy,vz", ("vx", "vy", "vz"))
        assert lead_set.name == "Vx, Vy, Vz combined"

    def test_missing_lead(self):
        """A lead absent from the features is rejected."""
        with pytest.raises(UnknownLeadSet) as exc_info:
            resolve_lead_sets("table", STANDARD_LEADS[:6])
        assert exc_info.value.context["missing"] == sorted(STANDARD_LEADS[6:])

    def test_empty(self):
        with pytest.raises(UnknownLeadSet):
            resolve_lead_sets(" , ", STANDARD_LEADS)


class TestFeatureMatrix:
    """Test cases for feature_matrix."""

    def test_concatenates_in_lead_set_order(self):
        """Columns follow the lead set, not the stored order."""
        vector = feature_vector("r1", "MI", [(1.0, 2.0), (3.0, 4.0)], leads=("i", "ii"))
        x, labels, ids = feature_matrix([vector], LeadSet("x", ("ii", "i")))
        assert x.tolist() == [[3.0, 4.0, 1.0, 2.0]]
        assert labels == ["MI"]
        assert ids == ["r1"]

    def test_excludes_incomplete_records(self):
        """Records missing a lead of the set are left out."""
        full = feature_vector("r1", "MI", [(1.0, 2.0), (3.0, 4.0)], leads=("i", "ii"))
        partial = feature_vector("r2", "HC", [(5.0, 6.0)], leads=("i",))
        x, labels, _ = feature_matrix([full, partial], LeadSet("II", ("ii",)))
        assert x.shape == (1, 2)
        assert labels == ["MI"]

    def test_empty(self):
        """No qualifying record gives a (0, width) matrix."""
        vector = feature_vector("r1", "MI", [(1.0, 2.0)], leads=("i",))
        x, labels, _ = feature_matrix([vector], LeadSet("II, III", ("ii", "iii")))
        assert x.shape == (0, 4)
        assert labels == []
        assert x.dtype == np.float64

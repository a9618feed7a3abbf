"""Tests for max-coefficient features."""

import numpy as np
import pytest

from core.errors import MissingLead
from core.models.dynamics import CoefficientTrack
from services.coeff_estimator.features import (
    extract_features,
    featurize_record,
    fit_lead,
    trim_count,
)
from services.coeff_estimator.schemas import EstimatorConfig
from services.smoother import SmootherConfig
from tests.fixtures.records import harmonic_record


class TestExtractFeatures:
    """Test cases for extract_features."""

    def test_constant_track(self):
        """Constant coefficients are their own maxima."""
        track = CoefficientTrack.constant(9.25, 1.0, 0.0, 1.0)
        features = extract_features(track, EstimatorConfig(), "ii")
        assert features.lead == "ii"
        assert features.max_b0 == 9.25
        assert features.max_b1 == 1.0

    def test_monotone_track_trimmed(self):
        """A rising track peaks at the last retained grid time."""
        grid = np.round(np.arange(0.0, 5.01, 0.1), 10)
        track = CoefficientTrack.from_functions(lambda t: 4 + 2 * t, lambda t: 0.1 * np.ones_like(t), grid)
        features = extract_features(track, EstimatorConfig(edge_trim=0.1))
        assert features.argmax_b0_t == pytest.approx(4.5)
        assert features.max_b0 == pytest.approx(13.0)

    def test_ties_go_to_earliest_time(self):
        """Equal maxima resolve to the first one."""
        track = CoefficientTrack.constant(2.0, 0.5, 0.0, 1.0, 0.1)
        features = extract_features(track, EstimatorConfig(edge_trim=0.0))
        assert features.argmax_b0_t == 0.0
        assert features.argmax_b1_t == 0.0

    def test_boundary_spike_trimmed(self):
        """Spikes inside the trimmed band do not change the features."""
        grid = np.arange(100) / 100.0
        b0 = 10 + np.sin(2 * np.pi * grid)
        spiked = b0.copy()
        spiked[1] = 1e6
        spiked[-2] = 1e6
        cfg = EstimatorConfig(edge_trim=0.05)
        clean = extract_features(CoefficientTrack(grid, b0, np.zeros(100)), cfg)
        noisy = extract_features(CoefficientTrack(grid, spiked, np.zeros(100)), cfg)
        assert clean == noisy

    def test_signed_and_absolute_max(self):
        """The signed max ignores large negative values unless abs is requested."""
        grid = np.arange(10) / 10.0
        b1 = np.array([0.0, 0.1, -5.0, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
        track = CoefficientTrack(grid, np.ones(10), b1)
        signed = extract_features(track, EstimatorConfig(edge_trim=0.0))
        absolute = extract_features(track, EstimatorConfig(edge_trim=0.0, use_abs_max=True))
        assert signed.max_b1 == 0.2
        assert absolute.max_b1 == 5.0
        assert absolute.argmax_b1_t == pytest.approx(0.2)

    @pytest.mark.parametrize(("n", "fraction", "expected"), [(100, 0.05, 5), (99, 0.05, 4), (10, 0.0, 0)])
    def test_trim_count(self, n, fraction, expected):
        """floor(fraction * n) points per side."""
        assert trim_count(n, fraction) == expected


class TestFeaturizeRecord:
    """Test cases for fit_lead and featurize_record."""

    def test_twelve_leads(self, twelve_lead_record, smoother_config, estimator_config):
        """A 12-lead record yields 24 features near b0 = omega^2."""
        vector = featurize_record(twelve_lead_record, None, smoother_config, estimator_config)
        assert vector.record_id == "r001"
        assert vector.label == "MI"
        assert len(vector.leads) == 12
        assert vector.as_array().shape == (24,)
        omega_sq = (2 * np.pi * 3) ** 2
        for lead in vector.leads:
            assert 0.85 * omega_sq < lead.max_b0 < 1.15 * omega_sq

    def test_lead_filter(self, twelve_lead_record, smoother_config, estimator_config):
        """A single-lead filter gives two features."""
        vector = featurize_record(twelve_lead_record, ["III"], smoother_config, estimator_config)
        assert vector.lead_names == ("iii",)
        assert vector.as_array().shape == (2,)

    def test_missing_lead(self, twelve_lead_record, smoother_config, estimator_config):
        """Requested leads must exist."""
        with pytest.raises(MissingLead):
            featurize_record(twelve_lead_record, ["vx"], smoother_config, estimator_config)

    def test_fit_lead_shapes(self, smoother_config, estimator_config):
        """State and track share the smoother grid."""
        record = harmonic_record(omega=5.0, duration=1.0)
        state, track = fit_lead(record, "ii", smoother_config, estimator_config)
        assert len(state) == 100
        assert np.array_equal(state.grid, track.grid)

    def test_amplitude_invariance(self, smoother_config, estimator_config):
        """Record gain does not change the features."""
        small = harmonic_record(omega=2 * np.pi * 3, duration=1.0, amplitude=0.5)
        large = harmonic_record(omega=2 * np.pi * 3, duration=1.0, amplitude=4.0)
        a = featurize_record(small, None, smoother_config, estimator_config).as_array()
        b = featurize_record(large, None, smoother_config, estimator_config).as_array()
        assert a == pytest.approx(b, rel=1e-6)

    def test_deterministic(self, twelve_lead_record, smoother_config, estimator_config):
        """Same record, same features."""
        first = featurize_record(twelve_lead_record, ["ii"], smoother_config, estimator_config)
        again = featurize_record(twelve_lead_record, ["ii"], smoother_config, estimator_config)
        assert first == again

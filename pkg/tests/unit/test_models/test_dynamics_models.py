"""Tests for coefficient track, state and feature models."""

import numpy as np
import pytest

from core.errors import EmptyAfterTrim, InvalidTrack, MissingLead
from core.models.dynamics import (
    CoefficientTrack,
    FeatureVector,
    LeadFeatures,
    OdeInitialState,
    SmoothedState,
)


class TestCoefficientTrack:
    """Test cases for CoefficientTrack."""

    def test_constant(self):
        """constant() builds an evenly spaced grid including the stop time."""
        track = CoefficientTrack.constant(1.0, 0.5, 0.0, 1.0, 0.25)
        assert track.grid.tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert np.all(track.b0 == 1.0)
        assert np.all(track.b1 == 0.5)

    def test_grid_must_increase(self):
        """Non-increasing grid is rejected."""
        with pytest.raises(InvalidTrack):
            CoefficientTrack([0.0, 0.0, 1.0], [1, 1, 1], [0, 0, 0])

    def test_lengths_must_match(self):
        """b0 and b1 must match the grid."""
        with pytest.raises(InvalidTrack):
            CoefficientTrack([0.0, 1.0], [1.0], [0.0, 0.0])

    def test_at_interpolates_linearly(self):
        """Values between grid points are linear interpolations."""
        track = CoefficientTrack.from_functions(lambda t: 4 + 2 * t, lambda t: 0.1, [0.0, 1.0, 2.0])
        b0, b1 = track.at([0.5, 1.25])
        assert b0 == pytest.approx([5.0, 6.5])
        assert b1 == pytest.approx([0.1, 0.1])

    def test_csv_round_trip(self):
        """to_csv / from_csv preserve values to the printed precision."""
        track = CoefficientTrack.from_functions(np.sin, np.cos, np.linspace(0, 1, 11))
        text = track.to_csv()
        assert text.splitlines()[0] == "t,b0,b1"
        again = CoefficientTrack.from_csv(text)
        assert again.b0 == pytest.approx(track.b0, rel=1e-9, abs=1e-12)

    def test_from_csv_wrong_columns(self):
        """Unexpected header is an InvalidTrack."""
        with pytest.raises(InvalidTrack):
            CoefficientTrack.from_csv("t,a,b\n0,1,2\n")

    def test_slice(self):
        """slice() keeps grid points inside the closed interval."""
        track = CoefficientTrack.constant(1.0, 0.0, 0.0, 1.0, 0.1)
        assert len(track.slice(0.25, 0.55)) == 3
        with pytest.raises(EmptyAfterTrim):
            track.slice(2.0, 3.0)


class TestOdeInitialState:
    """Test cases for OdeInitialState."""

    def test_non_finite(self):
        """Initial values must be finite."""
        with pytest.raises(InvalidTrack):
            OdeInitialState(0.0, np.inf, 0.0)

    def test_scaled(self):
        """Scaling multiplies x0 and v0 but not t0."""
        assert OdeInitialState(1.0, 2.0, 3.0).scaled(2.0) == OdeInitialState(1.0, 4.0, 6.0)


class TestSmoothedState:
    """Test cases for SmoothedState."""

    def make_state(self, n: int = 10) -> SmoothedState:
        grid = np.arange(n) / 10.0
        return SmoothedState(grid, grid, np.ones(n), np.zeros(n), 0.5)

    def test_negative_variance(self):
        """Residual variance must be non-negative."""
        with pytest.raises(InvalidTrack):
            SmoothedState([0.0, 1.0], [0, 0], [0, 0], [0, 0], -1.0)

    def test_trim(self):
        """trim() drops floor(fraction * n) points per side."""
        trimmed = self.make_state(10).trim(0.25)
        assert len(trimmed) == 6
        assert trimmed.grid[0] == pytest.approx(0.2)

    def test_trim_fraction_range(self):
        """Fractions outside [0, 0.5) are rejected."""
        with pytest.raises(InvalidTrack):
            self.make_state().trim(0.5)

    def test_scaled(self):
        """Scaling multiplies the state and the variance by the square."""
        scaled = self.make_state().scaled(2.0)
        assert scaled.dx.tolist() == [2.0] * 10
        assert scaled.residual_variance == 2.0


class TestFeatureVector:
    """Test cases for FeatureVector."""

    def make_vector(self) -> FeatureVector:
        return FeatureVector(
            "r1",
            "MI",
            (LeadFeatures("i", 1.0, 0.1, 2.0, 0.2), LeadFeatures("ii", 3.0, 0.3, 4.0, 0.4)),
        )

    def test_as_array_in_requested_order(self):
        """Features concatenate (max_b0, max_b1) per lead in the given order."""
        vector = self.make_vector()
        assert vector.as_array().tolist() == [1.0, 2.0, 3.0, 4.0]
        assert vector.as_array(["ii", "i"]).tolist() == [3.0, 4.0, 1.0, 2.0]

    def test_as_array_ignores_case(self):
        """Lead names match whatever case they were written in."""
        vector = FeatureVector("r1", "MI", (LeadFeatures("V1", 1.0, 0.1, 2.0, 0.2),))
        assert vector.lead_names == ("v1",)
        assert vector.as_array(["V1"]).tolist() == [1.0, 2.0]
        assert vector.as_array([" v1"]).tolist() == [1.0, 2.0]

    def test_as_array_missing_lead(self):
        with pytest.raises(MissingLead):
            self.make_vector().as_array(["v6"])

    def test_to_rows(self):
        """One row per lead, in the features column order."""
        rows = self.make_vector().to_rows()
        assert rows[1] == ("r1", "MI", "ii", "3", "0.3", "4", "0.4")

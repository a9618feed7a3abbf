"""Pytest configuration and shared fixtures for all tests."""

from collections.abc import Generator
from pathlib import Path

import numpy as np
import pytest

from core.config import PipelineConfig
from core.config.settings import Settings, get_settings
from core.models.common import STANDARD_LEADS
from core.models.signal import SignalRecord
from services.classifier import SvmConfig
from services.coeff_estimator import EstimatorConfig
from services.smoother import SmootherConfig
from tests.fixtures.records import harmonic_record


@pytest.fixture(autouse=True)
def clear_settings_cache() -> Generator[None, None, None]:
    """Settings are cached per process; every test starts from a clean cache."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def test_settings() -> Settings:
    """Get test settings with appropriate defaults."""
    return Settings(
        _env_file=None,
        environment="testing",
        log_level="WARNING",
        workers=1,
        fetch_timeout=5.0,
        fetch_max_retries=2,
        metrics_enabled=True,
        tracing_enabled=False,
    )


@pytest.fixture
def smoother_config() -> SmootherConfig:
    """Default smoother settings."""
    return SmootherConfig()


@pytest.fixture
def estimator_config() -> EstimatorConfig:
    """Default estimator settings."""
    return EstimatorConfig()


@pytest.fixture
def linear_svm() -> SvmConfig:
    """Linear SVM without standardization, for hand-checkable problems."""
    return SvmConfig(kernel="linear", C=10.0, standardize=False)


@pytest.fixture
def pipeline_config() -> PipelineConfig:
    """Pipeline settings small enough for unit tests."""
    return PipelineConfig(svm_c_grid=[10.0], cv_folds=4)


@pytest.fixture
def twelve_lead_record() -> SignalRecord:
    """One second of a 12-lead oscillator record at 1 kHz."""
    return harmonic_record(
        omega=2 * np.pi * 3,
        fs=1000.0,
        duration=1.0,
        leads=STANDARD_LEADS,
        record_id="r001",
        label="MI",
    )


@pytest.fixture
def synth_spec_path(tmp_path: Path) -> Path:
    """JSON spec of a small two-class corpus (2 classes x 3 records x 12 leads)."""
    path = tmp_path / "spec.json"
    path.write_text(
        """
        {
          "fs": 1000,
          "duration": 1.0,
          "seed": 7,
          "noise_sd": 0.002,
          "classes": [
            {"label": "MI", "count": 3, "b0": {"intercept": 355.3}, "x0": 2.0},
            {"label": "HC", "count": 3, "b0": {"intercept": 1934.4}, "x0": 2.0}
          ]
        }
        """,
        encoding="utf-8",
    )
    return path

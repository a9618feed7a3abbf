"""Max-coefficient features per lead and per record."""

from collections.abc import Sequence

import numpy as np

from core.errors import EmptyAfterTrim
from core.logging import get_logger
from core.models.dynamics import CoefficientTrack, FeatureVector, LeadFeatures, SmoothedState
from core.models.signal import SignalRecord
from core.tracing import create_span
from services.coeff_estimator.coefficients import fit_coefficients
from services.coeff_estimator.schemas import EstimatorConfig
from services.smoother import SmootherConfig, smooth_lead

logger = get_logger(__name__)


def trim_count(n: int, edge_trim: float) -> int:
    return int(np.floor(edge_trim * n))


def extract_features(
    track: CoefficientTrack, cfg: EstimatorConfig, lead: str = ""
) -> LeadFeatures:
    """
    Maximum of b0 and of b1 over the track with ``edge_trim`` removed from
    both ends; ties go to the earliest time.

    Raises:
        EmptyAfterTrim: Trimming leaves no grid points
    """
    n = len(track)
    k = trim_count(n, cfg.edge_trim)
    if n - 2 * k < 1:
        raise EmptyAfterTrim(f"trimming {k} of {n} points per side leaves nothing", lead=lead)
    grid = track.grid[k : n - k]

    def peak(values: np.ndarray) -> tuple[float, float]:
        values = values[k : n - k]
        if cfg.use_abs_max:
            values = np.abs(values)
        i = int(np.argmax(values))
        return float(values[i]), float(grid[i])

    max_b0, argmax_b0_t = peak(track.b0)
    max_b1, argmax_b1_t = peak(track.b1)
    return LeadFeatures(lead, max_b0, argmax_b0_t, max_b1, argmax_b1_t)


def fit_lead(
    record: SignalRecord,
    lead: str,
    smoother_cfg: SmootherConfig,
    estimator_cfg: EstimatorConfig,
) -> tuple[SmoothedState, CoefficientTrack]:
    """Smooth one lead and fit its coefficient track."""
    signal = record.lead(lead)
    with create_span("fit_lead", {"record_id": record.record_id, "lead": signal.name}):
        state = smooth_lead(signal, record.fs, smoother_cfg)
        track = fit_coefficients(state, estimator_cfg)
    return state, track


def featurize_record(
    record: SignalRecord,
    leads: Sequence[str] | None,
    smoother_cfg: SmootherConfig,
    estimator_cfg: EstimatorConfig,
) -> FeatureVector:
    """
    Run smooth -> fit -> extract for each selected lead (all leads when None).

    Raises:
        MissingLead: A selected lead is absent from the record
    """
    names = list(leads) if leads is not None else list(record.lead_names)
    signals = [record.lead(name) for name in names]
    features = []
    for signal in signals:
        _, track = fit_lead(record, signal.name, smoother_cfg, estimator_cfg)
        features.append(extract_features(track, estimator_cfg, signal.name))
    logger.debug("record_featurized", record_id=record.record_id, leads=len(features))
    return FeatureVector(record.record_id, record.label, tuple(features))

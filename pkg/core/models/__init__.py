"""Core models module."""

from core.models.common import (
    STANDARD_LEADS,
    UNLABELED,
    ClassLabel,
    ErrorResponse,
    format_float,
    order_classes,
    render_csv,
)
from core.models.dynamics import (
    FEATURE_COLUMNS,
    CoefficientTrack,
    FeatureVector,
    LeadFeatures,
    OdeInitialState,
    SmoothedState,
    Trajectory,
)
from core.models.signal import LeadSignal, SignalRecord

__all__ = [
    # Common models
    "ClassLabel",
    "ErrorResponse",
    "STANDARD_LEADS",
    "UNLABELED",
    "format_float",
    "order_classes",
    "render_csv",
    # Signal models
    "LeadSignal",
    "SignalRecord",
    # Dynamics models
    "CoefficientTrack",
    "OdeInitialState",
    "Trajectory",
    "SmoothedState",
    "LeadFeatures",
    "FeatureVector",
    "FEATURE_COLUMNS",
]

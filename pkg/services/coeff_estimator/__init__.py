"""Time-varying ODE coefficient estimation and max-coefficient features."""

from services.coeff_estimator.coefficients import fit_coefficients, local_design, window_bounds
from services.coeff_estimator.features import (
    extract_features,
    featurize_record,
    fit_lead,
    trim_count,
)
from services.coeff_estimator.features_io import (
    parse_features_csv,
    read_features_csv,
    render_features_csv,
    write_features_csv,
)
from services.coeff_estimator.schemas import EstimatorConfig

__all__ = [
    "EstimatorConfig",
    "extract_features",
    "featurize_record",
    "fit_coefficients",
    "fit_lead",
    "local_design",
    "parse_features_csv",
    "read_features_csv",
    "render_features_csv",
    "trim_count",
    "window_bounds",
    "write_features_csv",
]

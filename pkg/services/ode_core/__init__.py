"""Forward solver and synthetic record generator for time-varying second-order ODEs."""

from services.ode_core.solver import COVERAGE_TOLERANCE, sample_count, solve_ode
from services.ode_core.synth import PTB_GAIN, default_lead_names, synth_record

__all__ = [
    "COVERAGE_TOLERANCE",
    "PTB_GAIN",
    "default_lead_names",
    "sample_count",
    "solve_ode",
    "synth_record",
]

"""Workflow orchestration and the ``cardiodyn`` command line."""

from services.pipeline.commands import (
    CompareResult,
    FeaturizeResult,
    cmd_compare_spline,
    cmd_evaluate,
    cmd_featurize,
    cmd_fetch,
    cmd_synth,
    read_any_record,
)
from services.pipeline.lead_sets import (
    LeadSet,
    feature_matrix,
    parse_lead_selection,
    resolve_lead_sets,
)
from services.pipeline.prometheus import PipelineMetrics
from services.pipeline.schemas import ClassSpec, SynthSpec, TrackSpec

__all__ = [
    "ClassSpec",
    "CompareResult",
    "FeaturizeResult",
    "LeadSet",
    "PipelineMetrics",
    "SynthSpec",
    "TrackSpec",
    "cmd_compare_spline",
    "cmd_evaluate",
    "cmd_featurize",
    "cmd_fetch",
    "cmd_synth",
    "feature_matrix",
    "parse_lead_selection",
    "read_any_record",
    "resolve_lead_sets",
]

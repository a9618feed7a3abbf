"""Prometheus metrics for pipeline runs.

Each run owns a CollectorRegistry; when metrics are enabled it is written
in text format to ``metrics.prom`` in the output directory.
"""

from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, write_to_textfile


class PipelineMetrics:
    """Counters, histograms and gauges of one pipeline run."""

    def __init__(self, registry: CollectorRegistry | None = None):
        self.registry = registry or CollectorRegistry()

        # Counters
        self.records_featurized = Counter(
            "cardiodyn_records_featurized",
            "Records featurized successfully",
            registry=self.registry,
        )
        self.records_rejected = Counter(
            "cardiodyn_records_rejected",
            "Records rejected during featurization",
            ["reason"],
            registry=self.registry,
        )
        self.leads_fitted = Counter(
            "cardiodyn_leads_fitted",
            "Leads smoothed and fitted",
            registry=self.registry,
        )

        # Histograms
        self.stage_duration_seconds = Histogram(
            "cardiodyn_stage_duration_seconds",
            "Duration of pipeline stages in seconds",
            ["stage"],
            buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0, 300.0, 1800.0),
            registry=self.registry,
        )

        # Gauges
        self.cv_test_accuracy = Gauge(
            "cardiodyn_cv_test_accuracy",
            "Mean cross-validated test accuracy",
            ["lead_set"],
            registry=self.registry,
        )

    def record_featurized(self, leads: int) -> None:
        self.records_featurized.inc()
        self.leads_fitted.inc(leads)

    def record_rejected(self, reason: str) -> None:
        self.records_rejected.labels(reason=reason).inc()

    def observe_stage(self, stage: str, seconds: float) -> None:
        self.stage_duration_seconds.labels(stage=stage).observe(seconds)

    def set_test_accuracy(self, lead_set: str, accuracy: float | None) -> None:
        if accuracy is not None:
            self.cv_test_accuracy.labels(lead_set=lead_set).set(accuracy)

    def write(self, path: Path) -> Path:
        write_to_textfile(str(path), self.registry)
        return Path(path)

"""Exception hierarchy shared by all cardiodyn services.

Every error carries a stable ``code`` (the class name) and the process exit
code the CLI uses when the error escapes a command.
"""

from typing import Any


class CardiodynError(Exception):
    """Base class for all domain errors."""

    exit_code: int = 3

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    @property
    def code(self) -> str:
        return type(self).__name__


class ConfigError(CardiodynError, ValueError):
    """Invalid or inconsistent configuration."""

    exit_code = 2


# ============================================================================
# Ingestion
# ============================================================================


class IngestError(CardiodynError, ValueError):
    """Base class for record parsing failures."""


class MalformedHeader(IngestError):
    """Header text does not follow the WFDB line structure."""


class MalformedManifest(IngestError):
    """Manifest is missing columns or repeats record ids."""


class UnsupportedFormat(IngestError):
    """Signal storage format other than WFDB format 16."""


class TruncatedData(IngestError):
    """Signal file length disagrees with the header."""


class MissingSamples(IngestError):
    """Decoded samples contain the format's invalid-sample marker or NaN."""


class InvalidRecord(IngestError):
    """A SignalRecord or LeadSignal invariant is violated."""


class RaggedRows(IngestError):
    """CSV rows have differing column counts."""


class NonNumericCell(IngestError):
    """CSV body cell is not a finite number."""


class NetworkError(IngestError):
    """HTTP fetch failed."""

    def __init__(self, message: str, status: int | None = None, **context: Any):
        super().__init__(message, status=status, **context)
        self.status = status


class ChecksumMismatch(IngestError):
    """Downloaded file does not match the expected SHA-256 digest."""


# ============================================================================
# ODE solver
# ============================================================================


class OdeError(CardiodynError, ValueError):
    """Base class for forward-solver failures."""


class InvalidTrack(OdeError):
    """CoefficientTrack invariant violated."""


class GridCoverage(OdeError):
    """Coefficient track does not cover the requested interval."""


class NonFinite(OdeError):
    """Solution blew up to a non-finite value."""


# ============================================================================
# Smoothing and coefficient estimation
# ============================================================================


class EstimationError(CardiodynError, ValueError):
    """Base class for smoothing and coefficient estimation failures."""


class InsufficientSupport(EstimationError):
    """Fewer than p+1 samples carry kernel weight."""


class SingularDesign(EstimationError):
    """Least-squares design is numerically singular."""


class TooFewKnots(EstimationError):
    """Spline needs at least four knots."""


class InsufficientWindow(EstimationError):
    """Coefficient window holds fewer points than parameters."""


class EmptyAfterTrim(EstimationError):
    """Edge trimming left no grid points."""


class MissingLead(EstimationError):
    """Requested lead is absent from the record."""


# ============================================================================
# Classification and evaluation
# ============================================================================


class ClassifierError(CardiodynError, ValueError):
    """Base class for SVM training and prediction failures."""


class SingleClass(ClassifierError):
    """Training data contains only one class."""


class DegenerateFeatures(ClassifierError):
    """All training rows are identical."""


class DimensionMismatch(ClassifierError):
    """Row dimensionality differs from the training data."""


class EmptyPair(ClassifierError):
    """A one-vs-one pair has a class without rows."""


class EvaluationError(CardiodynError, ValueError):
    """Base class for cross-validation failures."""


class TooFewRows(EvaluationError):
    """Not enough rows (or an invalid k) for the requested folds."""


class UnknownLeadSet(EvaluationError):
    """Lead set name or member lead is not available."""


class EmptyOutput(CardiodynError):
    """A batch command produced no output rows."""

    exit_code = 1

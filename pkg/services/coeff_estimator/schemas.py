"""Coefficient estimator configuration schema."""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EstimatorConfig(BaseModel):
    """Windowed least-squares coefficient estimation settings."""

    model_config = ConfigDict(frozen=True)

    window: float = Field(0.05, gt=0, description="Window half-width w in seconds")
    ridge: float = Field(1e-8, ge=0, description="Ridge, relative to the largest normal diagonal")
    ridge_rcond: float = Field(
        1e-8, gt=0, description="Engage the ridge below this reciprocal condition estimate"
    )
    singular_rcond: float = Field(
        1e-13, gt=0, description="Reject windows below this reciprocal condition estimate"
    )
    edge_trim: float = Field(
        0.05, ge=0, lt=0.5, description="Fraction of the grid dropped at each end for features"
    )
    use_abs_max: bool = Field(False, description="Take max |b| instead of the signed max")

    @model_validator(mode="after")
    def _check_thresholds(self) -> "EstimatorConfig":
        if self.singular_rcond > self.ridge_rcond:
            raise ValueError("singular_rcond must not exceed ridge_rcond")
        return self

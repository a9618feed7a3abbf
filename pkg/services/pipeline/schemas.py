"""Synthetic corpus document (the JSON read by ``synth``)."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.models.common import STANDARD_LEADS


class TrackSpec(BaseModel):
    """Coefficient curve intercept + slope * t + amplitude * sin(2 pi frequency t)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    intercept: float = 0.0
    slope: float = 0.0
    amplitude: float = 0.0
    frequency: float = Field(0.0, ge=0, description="Hz")

    def evaluate(self, t: np.ndarray, offset: float = 0.0) -> np.ndarray:
        t = np.asarray(t, dtype=np.float64)
        return (
            self.intercept
            + offset
            + self.slope * t
            + self.amplitude * np.sin(2.0 * np.pi * self.frequency * t)
        )


class ClassSpec(BaseModel):
    """Records of one class: generating tracks, initial state, and count."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    label: str = Field(..., min_length=1)
    count: int = Field(..., ge=1)
    b0: TrackSpec
    b1: TrackSpec = TrackSpec()
    x0: float = 1.0
    v0: float = 0.0
    b0_jitter: float = Field(
        0.0, ge=0, description="SD of a per-lead random shift of the b0 intercept"
    )


class SynthSpec(BaseModel):
    """Whole synthetic corpus; every record derives its seed from ``seed``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    fs: float = Field(1000.0, gt=0)
    duration: float = Field(2.0, gt=0, description="Seconds per record")
    seed: int = Field(0, ge=0)
    noise_sd: float = Field(0.0, ge=0, description="mV")
    gain: float = Field(2000.0, gt=0, description="ADC units per mV")
    leads: list[str] = Field(default_factory=lambda: list(STANDARD_LEADS), min_length=1)
    classes: list[ClassSpec] = Field(..., min_length=1)

    @field_validator("leads")
    @classmethod
    def _unique_leads(cls, value: list[str]) -> list[str]:
        value = [lead.strip().lower() for lead in value]
        if len(set(value)) != len(value) or not all(value):
            raise ValueError("lead names must be unique and non-empty")
        return value

    @field_validator("classes")
    @classmethod
    def _unique_labels(cls, value: list[ClassSpec]) -> list[ClassSpec]:
        labels = [spec.label for spec in value]
        if len(set(labels)) != len(labels):
            raise ValueError("class labels must be unique")
        return value

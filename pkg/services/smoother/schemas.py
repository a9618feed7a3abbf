"""Smoother configuration schema."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field


class KernelName(StrEnum):
    """Kernel functions available to the local polynomial smoother."""

    EPANECHNIKOV = "epanechnikov"
    GAUSSIAN = "gaussian"


class SmootherConfig(BaseModel):
    """Local polynomial smoother settings."""

    model_config = ConfigDict(frozen=True)

    poly_order: int = Field(3, ge=2, description="Local polynomial degree p")
    bandwidth: float = Field(0.025, gt=0, description="Kernel bandwidth h in seconds")
    kernel: KernelName = Field(KernelName.EPANECHNIKOV, description="Kernel function")
    eval_stride: int = Field(10, ge=1, description="Evaluate at every stride-th sample")
    ridge: float = Field(1e-8, ge=0, description="Ridge on the non-intercept Taylor terms")

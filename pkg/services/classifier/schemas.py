"""SVM configuration and model document schemas."""

from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

MODEL_FORMAT = "cardiodyn.svm"
MODEL_VERSION = 1


class KernelType(StrEnum):
    """Supported SVM kernels."""

    LINEAR = "linear"
    RBF = "rbf"


class SvmConfig(BaseModel):
    """Soft-margin SVM training settings.

    ``gamma=None`` means 1 / number of features. ``class_weight`` is ``"none"``,
    ``"balanced"`` (C_k = C * n / (K * n_k)) or an explicit label -> multiplier map.
    """

    model_config = ConfigDict(frozen=True)

    kernel: KernelType = Field(KernelType.RBF, description="Kernel function")
    C: float = Field(10.0, gt=0, description="Box constraint")
    gamma: float | None = Field(None, gt=0, description="RBF width; None means 1/d")
    class_weight: Literal["none", "balanced"] | dict[str, float] = Field(
        "none", description="Per-class multipliers on C"
    )
    tol: float = Field(1e-3, gt=0, description="KKT tolerance")
    max_passes: int = Field(1000, ge=1, description="Iteration cap in units of n pair updates")
    standardize: bool = Field(True, description="Z-score features with training statistics")

    @field_validator("class_weight")
    @classmethod
    def _positive_weights(cls, value):
        if isinstance(value, dict) and any(not w > 0 for w in value.values()):
            raise ValueError("class weights must be positive")
        return value


class StandardizerDocument(BaseModel):
    mean: list[float]
    scale: list[float]


class MachineDocument(BaseModel):
    positive: str
    negative: str
    support_vectors: list[list[float]]
    dual_coef: list[float]
    intercept: float


class SvmModelDocument(BaseModel):
    """Versioned JSON document of a trained SvmModel."""

    format: Literal["cardiodyn.svm"] = MODEL_FORMAT
    version: Literal[1] = MODEL_VERSION
    kernel: KernelType
    gamma: float | None
    classes: list[str] = Field(..., min_length=2)
    n_features: int = Field(..., ge=1)
    standardizer: StandardizerDocument
    machines: list[MachineDocument] = Field(..., min_length=1)

"""Run-level pipeline configuration.

A run is configured by a flat ``key=value`` file (the same syntax as a
``.env`` file) plus command-line overrides. The effective configuration,
defaults included, is written next to the outputs as ``config.env``.
"""

import re
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.errors import ConfigError
from services.classifier.schemas import KernelType, SvmConfig
from services.coeff_estimator.schemas import EstimatorConfig
from services.smoother.schemas import KernelName, SmootherConfig

_LEAD_TOKEN = re.compile(r"^[a-z0-9_]+$")


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class PipelineConfig(BaseModel):
    """Every tunable of a featurize / evaluate / compare-spline run."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # Smoother
    smoother_poly_order: int = Field(3, ge=2)
    smoother_bandwidth: float = Field(0.025, gt=0)
    smoother_kernel: KernelName = KernelName.EPANECHNIKOV
    smoother_eval_stride: int = Field(10, ge=1)
    smoother_ridge: float = Field(1e-8, ge=0)

    # Coefficient estimator
    estimator_window: float = Field(0.05, gt=0)
    estimator_ridge: float = Field(1e-8, ge=0)
    estimator_ridge_rcond: float = Field(1e-8, gt=0)
    estimator_singular_rcond: float = Field(1e-13, gt=0)
    estimator_edge_trim: float = Field(0.05, ge=0, lt=0.5)
    estimator_use_abs_max: bool = False

    # SVM grid
    svm_kernel: KernelType = KernelType.RBF
    svm_c_grid: list[float] = Field(default_factory=lambda: [1.0, 10.0, 100.0], min_length=1)
    svm_gamma_grid: list[float | None] = Field(default_factory=lambda: [None], min_length=1)
    svm_class_weight: Literal["none", "balanced"] = "none"
    svm_tol: float = Field(1e-3, gt=0)
    svm_max_passes: int = Field(1000, ge=1)
    svm_standardize: bool = True

    # Leads and evaluation
    leads: str = Field("all12", description="Leads featurized per record")
    lead_sets: str = Field("table", description="Lead sets reported by evaluate")
    task: Literal["auto", "binary", "multiclass"] = "auto"
    positive_label: str = "MI"
    cv_folds: int = Field(10, ge=2)
    cv_inner_folds: int = Field(3, ge=2)
    cv_seed: int = Field(0, ge=0)
    cv_group_by_subject: bool = False

    # Inputs and outputs
    csv_fs: float = Field(1000.0, gt=0, description="Sampling rate assumed for CSV records")
    spline_knot_stride: int = Field(10, ge=1)
    compare_anchor: Literal["grid", "start"] = Field(
        "grid",
        description="Re-anchor the ODE reconstruction at every grid point, or only at the start",
    )
    manifest: Path | None = None
    output_dir: Path | None = None

    @field_validator("svm_c_grid", mode="before")
    @classmethod
    def _parse_c_grid(cls, value: Any) -> Any:
        return _split_list(value)

    @field_validator("svm_gamma_grid", mode="before")
    @classmethod
    def _parse_gamma_grid(cls, value: Any) -> Any:
        items = _split_list(value)
        if isinstance(items, list):
            return [None if item in ("auto", None) else item for item in items]
        return items

    @field_validator("svm_c_grid")
    @classmethod
    def _positive_c(cls, value: list[float]) -> list[float]:
        if any(not c > 0 for c in value):
            raise ValueError("svm_c_grid entries must be positive")
        return value

    @field_validator("svm_gamma_grid")
    @classmethod
    def _positive_gamma(cls, value: list[float | None]) -> list[float | None]:
        if any(g is not None and not g > 0 for g in value):
            raise ValueError("svm_gamma_grid entries must be positive or 'auto'")
        return value

    @field_validator("leads", "lead_sets")
    @classmethod
    def _lead_tokens(cls, value: str) -> str:
        value = value.strip().lower()
        tokens = [token.strip() for token in value.split(",")]
        if not tokens or any(not _LEAD_TOKEN.match(token) for token in tokens):
            raise ValueError(f"invalid lead selection {value!r}")
        return value

    def smoother_config(self) -> SmootherConfig:
        return SmootherConfig(
            poly_order=self.smoother_poly_order,
            bandwidth=self.smoother_bandwidth,
            kernel=self.smoother_kernel,
            eval_stride=self.smoother_eval_stride,
            ridge=self.smoother_ridge,
        )

    def estimator_config(self) -> EstimatorConfig:
        return EstimatorConfig(
            window=self.estimator_window,
            ridge=self.estimator_ridge,
            ridge_rcond=self.estimator_ridge_rcond,
            singular_rcond=self.estimator_singular_rcond,
            edge_trim=self.estimator_edge_trim,
            use_abs_max=self.estimator_use_abs_max,
        )

    def svm_grid(self) -> list[SvmConfig]:
        """Cartesian C x gamma grid, ordered by C then gamma (None first)."""
        gammas = sorted(set(self.svm_gamma_grid), key=lambda g: (g is not None, g or 0.0))
        if self.svm_kernel == KernelType.LINEAR:
            gammas = [None]
        return [
            SvmConfig(
                kernel=self.svm_kernel,
                C=c,
                gamma=gamma,
                class_weight=self.svm_class_weight,
                tol=self.svm_tol,
                max_passes=self.svm_max_passes,
                standardize=self.svm_standardize,
            )
            for c in sorted(set(self.svm_c_grid))
            for gamma in gammas
        ]

    def check_paths(self) -> None:
        """Raise ConfigError when a referenced input path does not exist."""
        if self.manifest is not None and not self.manifest.is_file():
            raise ConfigError(f"manifest not found: {self.manifest}", path=str(self.manifest))

    def dump_env(self) -> str:
        """Render every field as sorted ``key=value`` lines."""
        lines = [f"{key}={_render_value(value)}" for key, value in sorted(self.model_dump().items())]
        return "\n".join(lines) + "\n"


def _render_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return ",".join("auto" if item is None else _render_value(item) for item in value)
    return str(value)


def load_pipeline_config(
    path: Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> PipelineConfig:
    """
    Build a PipelineConfig from an optional key=value file and overrides.

    Keys are case-insensitive; empty values in the file mean "use the default".
    ``None`` overrides are ignored so unset command-line flags fall through.

    Raises:
        ConfigError: File missing or unknown keys
        pydantic.ValidationError: A value violates a field constraint
    """
    values: dict[str, Any] = {}
    if path is not None:
        if not Path(path).is_file():
            raise ConfigError(f"config file not found: {path}", path=str(path))
        for key, value in dotenv_values(path).items():
            if value not in (None, ""):
                values[key.strip().lower()] = value

    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value

    unknown = sorted(set(values) - set(PipelineConfig.model_fields))
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}", keys=unknown)
    return PipelineConfig(**values)

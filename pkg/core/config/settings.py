"""Core configuration settings using Pydantic BaseSettings."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process settings loaded from environment variables (prefix ``CARDIODYN_``)."""

    model_config = SettingsConfigDict(
        env_prefix="CARDIODYN_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application Environment
    environment: str = Field(default="production", description="Application environment")
    log_level: str = Field(default="INFO", description="Logging level")
    log_json: bool = Field(default=False, description="Emit JSON logs instead of console output")

    # Parallelism
    workers: int = Field(
        default=1,
        ge=1,
        description="Worker processes for per-record featurization and fold evaluation",
    )

    # HTTP fetch
    fetch_timeout: float = Field(default=60.0, gt=0, description="HTTP timeout in seconds")
    fetch_max_retries: int = Field(
        default=3, ge=0, description="Retries for transient HTTP failures"
    )

    # Prometheus Metrics
    metrics_enabled: bool = Field(
        default=True, description="Write Prometheus text-format metrics next to outputs"
    )

    # OpenTelemetry
    tracing_enabled: bool = Field(default=False, description="Enable OpenTelemetry spans")
    otel_exporter_otlp_endpoint: str | None = Field(
        default=None,
        description="OpenTelemetry OTLP exporter endpoint",
    )
    otel_service_name: str = Field(
        default="cardiodyn",
        description="OpenTelemetry service name",
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()

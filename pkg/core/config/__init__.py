"""Core configuration module."""

from core.config.pipeline import PipelineConfig, load_pipeline_config
from core.config.settings import Settings, get_settings

__all__ = ["PipelineConfig", "Settings", "get_settings", "load_pipeline_config"]

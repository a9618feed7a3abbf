"""OpenTelemetry tracing configuration.

Pipeline stages (parse, smooth, fit, train, evaluate) run inside spans so a
long featurization or cross-validation run can be inspected in any OTLP
backend. Without an endpoint, spans are created but never exported.
"""

from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

from core.logging import get_logger

logger = get_logger(__name__)


def configure_tracing(
    service_name: str,
    otlp_endpoint: str | None = None,
    environment: str = "production",
    enabled: bool = True,
):
    """
    Configure OpenTelemetry tracing.

    Args:
        service_name: Name reported as ``service.name``
        otlp_endpoint: OTLP gRPC exporter endpoint (e.g., 'http://localhost:4317').
                      If None, spans are collected locally only
        environment: Environment name
        enabled: Whether to install an SDK tracer provider at all

    Returns:
        The active TracerProvider
    """
    if not enabled:
        logger.debug("tracing_disabled")
        return trace.get_tracer_provider()

    resource = Resource.create({
        "service.name": service_name,
        "deployment.environment": environment,
    })
    tracer_provider = TracerProvider(resource=resource)

    if otlp_endpoint:
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

            otlp_exporter = OTLPSpanExporter(endpoint=otlp_endpoint, insecure=True)
            tracer_provider.add_span_processor(BatchSpanProcessor(otlp_exporter))
            logger.info("otlp_exporter_configured", endpoint=otlp_endpoint)
        except ImportError:
            logger.warning(
                "otlp_exporter_missing",
                hint="pip install opentelemetry-exporter-otlp",
            )
        except Exception as e:
            logger.warning("otlp_exporter_failed", error=str(e))

    trace.set_tracer_provider(tracer_provider)
    logger.debug("tracing_configured", service=service_name, environment=environment)
    return tracer_provider


def get_tracer(name: str = __name__) -> trace.Tracer:
    """Get a tracer instance for the calling module."""
    return trace.get_tracer(name)


@contextmanager
def create_span(name: str, attributes: dict[str, Any] | None = None) -> Iterator[trace.Span]:
    """
    Run a block inside a span.

    Usage:
        with create_span("smooth_lead", {"lead": "ii"}):
            ...

    Exceptions are recorded on the span and re-raised.
    """
    tracer = get_tracer()
    with tracer.start_as_current_span(name, record_exception=False) as span:
        for key, value in (attributes or {}).items():
            span.set_attribute(key, value)
        try:
            yield span
        except Exception as exc:
            span.set_attribute("error", True)
            span.set_attribute("error.type", type(exc).__name__)
            span.set_attribute("error.message", str(exc))
            raise

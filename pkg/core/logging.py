"""Structured logging configuration using structlog.

All services log through structlog on top of the standard library so that
pipeline runs produce either console-friendly or JSON lines on standard error.
Standard output stays reserved for command results.
"""

import logging
import logging.config
from typing import Any

import structlog


def configure_logging(
    log_level: str = "INFO",
    json_output: bool = False,
    service_name: str = "cardiodyn",
) -> None:
    """
    Configure structlog and the standard library root logger.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_output: Whether to output JSON (True) or console text (False)
        service_name: Service name for log context
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    pre_chain = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
    ]

    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "plain": {
                    "()": structlog.stdlib.ProcessorFormatter,
                    "processors": [
                        structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                        structlog.dev.ConsoleRenderer(colors=False),
                    ],
                    "foreign_pre_chain": pre_chain,
                },
                "json": {
                    "()": structlog.stdlib.ProcessorFormatter,
                    "processors": [
                        structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                        structlog.processors.dict_tracebacks,
                        structlog.processors.JSONRenderer(),
                    ],
                    "foreign_pre_chain": pre_chain,
                },
            },
            "handlers": {
                "default": {
                    "level": numeric_level,
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr",
                    "formatter": "json" if json_output else "plain",
                },
            },
            "loggers": {
                "": {
                    "handlers": ["default"],
                    "level": numeric_level,
                    "propagate": True,
                },
            },
        }
    )

    structlog.configure(
        processors=[
            *pre_chain,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    structlog.contextvars.bind_contextvars(service=service_name)
    get_logger(__name__).debug(
        "logging_configured",
        log_level=log_level,
        json_output=json_output,
    )


def get_logger(name: str = __name__) -> Any:
    """
    Get a structlog logger instance.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured structlog logger
    """
    return structlog.get_logger(name)


def bind_run_context(**context: Any) -> None:
    """
    Bind run-specific context (command, seed, output directory) to all
    subsequent log lines of this process.
    """
    structlog.contextvars.bind_contextvars(
        **{key: value for key, value in context.items() if value is not None}
    )


def clear_run_context() -> None:
    """Clear run-specific context at the end of a command."""
    structlog.contextvars.clear_contextvars()

"""
Structured logging configuration for the balanced random walk laboratory

This module provides centralized logging configuration using structlog
for consistent, structured logging across the CLI, use cases and domain services.
"""

import sys
import logging
import structlog
from typing import Any, Dict, Optional, List
from pathlib import Path

SERVICE_NAME = "balanced-llt"


_RECORD_FIELDS = {
    'name', 'msg', 'args', 'created', 'filename', 'funcName', 'levelname', 'levelno',
    'lineno', 'module', 'msecs', 'pathname', 'process', 'processName', 'relativeCreated',
    'thread', 'threadName', 'exc_info', 'exc_text', 'stack_info', 'message', 'asctime',
    'taskName',
}


class PipeFormatter(logging.Formatter):
    """Renders records as LEVEL | logger | key=<value> | message"""

    def format(self, record):
        context_parts = []
        base_msg = record.getMessage()

        for key, value in record.__dict__.items():
            if key not in _RECORD_FIELDS and value is not None:
                context_parts.append(f"{key}=<{value}>")

        parts = [record.levelname, record.name]
        if context_parts:
            parts.extend(context_parts)
        if base_msg and base_msg not in context_parts:
            parts.append(base_msg)

        return " | ".join(parts)


def configure_logging(
    level: str = "INFO",
    json_format: bool = False,
    log_file: Optional[Path] = None,
    service_name: str = SERVICE_NAME
) -> None:
    """
    Configure structured logging for the laboratory.

    Console output goes to stderr so that stdout stays free for command results.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_format: Whether to output logs in JSON format
        log_file: Optional log file path
        service_name: Service name to include in all logs
    """
    numeric_level = getattr(logging, level.upper())
    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    root_logger.handlers = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    if not json_format:
        console_handler.setFormatter(PipeFormatter())
    else:
        console_handler.setFormatter(logging.Formatter('%(message)s'))
    root_logger.addHandler(console_handler)

    processors: List[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]
    processors.append(lambda _, __, event_dict: {**event_dict, "service": service_name})

    if json_format:
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(
            colors=False,
            exception_formatter=structlog.dev.plain_traceback,
        ))

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(logging.Formatter('%(message)s'))
        root_logger.addHandler(file_handler)


def get_logger(name: str) -> structlog.BoundLogger:
    """Structured logger named balanced-llt.<module>, e.g. balanced-llt.core.domain.services.diagnostics"""
    name = name.removeprefix("src.")
    if name == "__main__":
        name = "main"
    return structlog.get_logger(f"{SERVICE_NAME}.{name}")


def log_run_lifecycle(phase: str, command: str, **kwargs: Any) -> Dict[str, Any]:
    """Fields for a sub-command lifecycle event (phase: starting, completed)"""
    return {"phase": phase, "command": command, **kwargs}


def log_check_result(name: str, violation: float, passed: bool, **kwargs: Any) -> Dict[str, Any]:
    """
    Fields for one diagnostic outcome.

    violation is the largest lhs - rhs seen; a lemma check passes while it stays within its slack.
    """
    return {"check": name, "violation": violation, "passed": passed, **kwargs}


def log_evolution_progress(kind: str, n: int, horizon: int, **kwargs: Any) -> Dict[str, Any]:
    """Fields for an evolution checkpoint"""
    return {"kind": kind, "n": n, "horizon": horizon, **kwargs}


def log_operation(
    logger: structlog.BoundLogger,
    operation_type: str,
    entity_id: Optional[str] = None,
    success: bool = True,
    details: Optional[Dict[str, Any]] = None,
    **kwargs: Any
) -> None:
    """
    Log an adapter operation (save_environment, write_table, write_plot, ...).

    Args:
        logger: Logger of the calling adapter
        operation_type: Operation name
        entity_id: Fingerprint or path the operation acted on
        success: Outcome; failures are logged at error level
        details: Extra structured fields
    """
    fields: Dict[str, Any] = {"operation_type": operation_type, "success": success, **kwargs}
    if entity_id:
        fields["entity_id"] = entity_id
    if details:
        fields["details"] = details

    event = "operation_completed" if success else "operation_failed"
    log = logger.info if success else logger.error
    log(f"{event} | operation_type=<{operation_type}>", **fields)


# Defaults until the CLI reconfigures from LaboratoryConfig
configure_logging()

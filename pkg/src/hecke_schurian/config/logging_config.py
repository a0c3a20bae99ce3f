"""
Structured logging for the library and the CLI.

Everything is written to stderr; stdout carries only command payloads
(tables, matrices, JSON certificates). ``HECKE_LOG_FILE`` or ``--log-file``
additionally mirrors records into a rotating file.
"""

import logging
import logging.handlers
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import structlog
from structlog.types import Processor

from .settings import get_settings

LOG_FILE_BYTES = 10 * 1024 * 1024
LOG_FILE_BACKUPS = 3


def configure_logging(
    log_level: str | None = None,
    debug: bool | None = None,
    log_file: Path | None = None,
) -> None:
    """
    Configure structlog; arguments left as None fall back to settings.

    Debug mode forces DEBUG and switches to the coloured console renderer.
    """
    settings = get_settings()
    debug = settings.debug if debug is None else debug
    log_level = "DEBUG" if debug else (log_level or settings.log_level)
    log_file = log_file or settings.log_file
    level = getattr(logging, log_level.upper())

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level)
    if log_file is not None:
        _attach_file_handler(log_file, level)

    structlog.configure(
        processors=_processors(colour=debug),
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=(
            structlog.stdlib.LoggerFactory()
            if log_file is not None
            else structlog.WriteLoggerFactory(file=sys.stderr)
        ),
        cache_logger_on_first_use=True,
    )
    structlog.get_logger(__name__).debug(
        "Logging configured",
        log_level=log_level,
        log_file=str(log_file) if log_file else None,
    )


def _processors(colour: bool) -> list[Processor]:
    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="ISO"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]
    if colour:
        processors.append(structlog.dev.ConsoleRenderer(colors=True))
    else:
        processors.append(structlog.processors.JSONRenderer())
    return processors


def _attach_file_handler(log_file: Path, level: int) -> None:
    root = logging.getLogger()
    target = str(log_file.expanduser().resolve())
    for handler in root.handlers:
        if getattr(handler, "baseFilename", None) == target:
            return
    log_file.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        filename=target,
        maxBytes=LOG_FILE_BYTES,
        backupCount=LOG_FILE_BACKUPS,
        encoding="utf-8",
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    handler.setLevel(level)
    root.setLevel(level)
    root.addHandler(handler)


def get_logger(name: str) -> Any:
    return structlog.get_logger(name)


def bind_context(**kwargs: Any) -> None:
    """Replace the per-command context (``command``, ``e``, ``p``, ...)."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**kwargs)


def clear_context() -> None:
    structlog.contextvars.clear_contextvars()


class LoggerMixin:
    """Lazily bound module logger for long-lived objects (caches, deductions)."""

    @property
    def logger(self) -> Any:
        if not hasattr(self, "_logger"):
            self._logger = get_logger(self.__class__.__module__)
        return self._logger


def log_performance(operation: str, duration: float, **kwargs: Any) -> None:
    """Record the wall time of an LLT column, certification or sweep."""
    get_logger("performance").info(
        "Performance metric",
        operation=operation,
        duration_seconds=round(duration, 6),
        **kwargs,
    )


@contextmanager
def timed(operation: str, threshold: float = 0.0, **kwargs: Any) -> Iterator[None]:
    """
    Time the block and report it through :func:`log_performance`.

    Runs shorter than ``threshold`` seconds are not reported; a block that
    raises is not reported either.
    """
    started = time.perf_counter()
    yield
    elapsed = time.perf_counter() - started
    if elapsed >= threshold:
        log_performance(operation, elapsed, **kwargs)


def log_error(error: Exception, operation: str, **kwargs: Any) -> None:
    get_logger("errors").error(
        "Operation failed",
        operation=operation,
        error_type=type(error).__name__,
        error_message=str(error),
        **kwargs,
    )

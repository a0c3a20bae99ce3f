"""
Configuration and logging package.

Centralized settings (pydantic-settings) and structured logging (structlog)
shared by the library and the command-line front end.
"""

from .logging_config import (
    LoggerMixin,
    bind_context,
    clear_context,
    configure_logging,
    get_logger,
    log_error,
    log_performance,
    timed,
)
from .settings import Settings, get_settings, reload_settings, settings

__all__ = [
    # Settings
    "Settings",
    "settings",
    "get_settings",
    "reload_settings",
    # Logging
    "configure_logging",
    "get_logger",
    "bind_context",
    "clear_context",
    "LoggerMixin",
    "log_performance",
    "log_error",
    "timed",
]

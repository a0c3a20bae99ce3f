"""
Configuration management using Pydantic BaseSettings.

Every setting can be overridden with an environment variable carrying the
HECKE_ prefix (for example ``HECKE_CACHE_DIR=/tmp/llt``) or from a ``.env``
file in the working directory. Command-line flags take precedence over both.
"""

import os
from pathlib import Path

from pydantic import ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings

VALID_CONVENTIONS = ("above", "below")


class Settings(BaseSettings):
    """Runtime settings for the LLT engine, the column cache and the CLI."""

    # Application settings
    app_name: str = Field(default="hecke-schurian", description="Application name")
    debug: bool = Field(default=False, description="Enable debug mode")
    log_level: str = Field(default="WARNING", description="Logging level")
    log_file: Path | None = Field(
        default=None, description="Optional rotating log file mirroring stderr"
    )

    # Column cache settings
    cache_dir: Path = Field(
        default_factory=lambda: Path.home() / ".hecke-schurian" / "cache",
        description="Directory holding the persistent LLT column cache",
    )
    persist_cache: bool = Field(
        default=True, description="Write computed LLT columns to disk"
    )
    lock_timeout: float = Field(
        default=30.0,
        description="Seconds to wait for the advisory cache lock",
        ge=0.0,
        le=3600.0,
    )

    # LLT engine settings
    llt_convention: str = Field(
        default="above",
        description="Side of an addable node whose nodes are counted by f_i",
    )
    verify_divided_powers: bool = Field(
        default=False,
        description="Check divided powers against repeated f_i and [k]! (slow)",
    )

    # Certification settings
    enable_runner_reduction: bool = Field(
        default=False, description="Shrink e by runner removal before LLT"
    )
    chain_search_depth: int = Field(
        default=6,
        description="Maximum length of restriction/Scopes chains searched",
        ge=1,
        le=12,
    )

    # Performance settings
    max_workers: int = Field(
        default_factory=lambda: os.cpu_count() or 1,
        description="Worker threads used by sweeps",
        ge=1,
        le=256,
    )

    model_config = ConfigDict(
        env_prefix="HECKE_",
        case_sensitive=False,
        env_file=".env",
        env_file_encoding="utf-8",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the standard levels."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"log_level must be one of {valid_levels}")
        return v.upper()

    @field_validator("llt_convention")
    @classmethod
    def validate_llt_convention(cls, v: str) -> str:
        if v.lower() not in VALID_CONVENTIONS:
            raise ValueError(f"llt_convention must be one of {list(VALID_CONVENTIONS)}")
        return v.lower()

    @field_validator("cache_dir", mode="before")
    @classmethod
    def validate_cache_dir(cls, v: str | Path) -> Path:
        """Expand the cache directory; it is created on first write."""
        if isinstance(v, str):
            v = Path(v)
        return v.expanduser().resolve()

    @property
    def cache_file(self) -> Path:
        """Path of the persistent LLT column store."""
        return self.cache_dir / "llt_columns.txt"


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings


def reload_settings() -> Settings:
    """Reload settings from environment variables."""
    global settings
    settings = Settings()
    return settings

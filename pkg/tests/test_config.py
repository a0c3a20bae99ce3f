"""Tests for settings and logging context."""

import pytest
import structlog
from pydantic import ValidationError

from hecke_schurian.config import (
    Settings,
    bind_context,
    clear_context,
    reload_settings,
    timed,
)


def test_defaults(isolated_settings, tmp_path):
    assert isolated_settings.log_level == "WARNING"
    assert isolated_settings.llt_convention == "above"
    assert isolated_settings.chain_search_depth == 6
    assert isolated_settings.persist_cache is True
    assert isolated_settings.cache_file == (tmp_path / "cache").resolve() / "llt_columns.txt"


def test_environment_overrides(isolated_settings, monkeypatch):
    monkeypatch.setenv("HECKE_LOG_LEVEL", "debug")
    monkeypatch.setenv("HECKE_LLT_CONVENTION", "Below")
    monkeypatch.setenv("HECKE_ENABLE_RUNNER_REDUCTION", "true")
    monkeypatch.setenv("HECKE_MAX_WORKERS", "2")
    settings = reload_settings()
    assert settings.log_level == "DEBUG"
    assert settings.llt_convention == "below"
    assert settings.enable_runner_reduction is True
    assert settings.max_workers == 2


@pytest.mark.parametrize(
    "field, value",
    [
        ("log_level", "LOUD"),
        ("llt_convention", "sideways"),
        ("chain_search_depth", 0),
        ("max_workers", 0),
        ("lock_timeout", -1.0),
    ],
)
def test_invalid_values_are_rejected(field, value):
    with pytest.raises(ValidationError):
        Settings(**{field: value})


def test_bind_context_replaces_previous_context():
    bind_context(command="decomp", e=3)
    bind_context(command="certify")
    assert structlog.contextvars.get_contextvars() == {"command": "certify"}
    clear_context()
    assert structlog.contextvars.get_contextvars() == {}


def test_log_file_setting(isolated_settings, monkeypatch, tmp_path):
    assert isolated_settings.log_file is None
    monkeypatch.setenv("HECKE_LOG_FILE", str(tmp_path / "hecke.log"))
    assert reload_settings().log_file == tmp_path / "hecke.log"


def test_timed_reports_through_log_performance(mocker):
    report = mocker.patch("hecke_schurian.config.logging_config.log_performance")
    with timed("llt_column", e=3, mu="4,2"):
        pass
    report.assert_called_once()
    args, kwargs = report.call_args
    assert args[0] == "llt_column"
    assert args[1] >= 0
    assert kwargs == {"e": 3, "mu": "4,2"}


def test_timed_skips_fast_and_failing_blocks(mocker):
    report = mocker.patch("hecke_schurian.config.logging_config.log_performance")
    with timed("llt_column", threshold=60.0):
        pass
    with pytest.raises(RuntimeError):
        with timed("sweep"):
            raise RuntimeError("worker died")
    report.assert_not_called()

"""Shared fixtures and hypothesis profiles."""

import os

import hypothesis
import pytest

from hecke_schurian.config import reload_settings

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def isolated_settings(tmp_path, monkeypatch):
    """Settings pointing the column cache at a temporary directory."""
    monkeypatch.setenv("HECKE_CACHE_DIR", str(tmp_path / "cache"))
    yield reload_settings()
    monkeypatch.undo()
    reload_settings()

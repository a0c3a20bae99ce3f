"""Tests for the error hierarchy, retries and cache file helpers."""

import os

import pytest

from hecke_schurian.utils import (
    CacheError,
    CacheLockedError,
    HeckeError,
    IncomparableSizesError,
    PartitionError,
    QuantumCharacteristicError,
    advisory_lock,
    atomic_write_file,
    file_size,
    format_error_for_user,
    handle_errors,
    quarantine_file,
    remove_file,
    retry_with_backoff,
)


def test_partition_error_reports_the_position():
    err = PartitionError("bad token", position=3)
    assert err.message == "bad token (at position 3)"
    assert err.details["position"] == 3
    assert err.suggestions


def test_fixed_messages():
    assert "incomparable sizes" in IncomparableSizesError(3, 4).message
    assert QuantumCharacteristicError(2).message == "quantum characteristic 2 out of scope"
    assert "at least 3" in QuantumCharacteristicError(1).message


def test_domain_errors_keep_details_and_suggestions():
    err = HeckeError("boom", details={"k": 1}, suggestions=["retry"])
    assert (err.message, err.user_message) == ("boom", "boom")
    assert err.details == {"k": 1}
    assert err.suggestions == ["retry"]


def test_format_error_for_user_lists_suggestions():
    text = format_error_for_user(HeckeError("boom", suggestions=["first", "second"]))
    assert text.startswith("Error: boom")
    assert "  1. first" in text
    assert "  2. second" in text


def test_handle_errors_wraps_os_errors():
    @handle_errors(CacheError, user_message="cache trouble")
    def broken():
        raise OSError("disk full")

    with pytest.raises(CacheError) as info:
        broken()
    assert info.value.user_message == "cache trouble"
    assert info.value.details["original_error_type"] == "OSError"


def test_handle_errors_passes_domain_errors_through():
    @handle_errors(CacheError)
    def broken():
        raise PartitionError("bad")

    with pytest.raises(PartitionError):
        broken()


def test_retry_with_backoff_retries_then_succeeds():
    calls = []

    @retry_with_backoff(max_attempts=3, min_wait=0, max_wait=0, retry_exceptions=(OSError,))
    def flaky():
        calls.append(1)
        if len(calls) < 3:
            raise OSError("transient")
        return "ok"

    assert flaky() == "ok"
    assert len(calls) == 3


def test_retry_with_backoff_reraises_the_original_error():
    @retry_with_backoff(max_attempts=2, min_wait=0, max_wait=0, retry_exceptions=(OSError,))
    def always():
        raise OSError("still broken")

    with pytest.raises(OSError, match="still broken"):
        always()


def test_retries_are_logged(mocker):
    log = mocker.patch("hecke_schurian.utils.error_handling.logger")

    @retry_with_backoff(max_attempts=2, min_wait=0, max_wait=0)
    def always():
        raise OSError("locked by another writer")

    with pytest.raises(OSError):
        always()
    log.warning.assert_called_once()
    assert log.warning.call_args.kwargs["attempt"] == 1
    assert log.warning.call_args.kwargs["function"] == "always"


def test_atomic_write_leaves_no_temporary_files(tmp_path):
    target = tmp_path / "nested" / "columns.txt"
    atomic_write_file(target, "first\n")
    atomic_write_file(target, "second\n")
    assert target.read_text() == "second\n"
    assert [p.name for p in target.parent.iterdir()] == ["columns.txt"]
    assert file_size(target) == len("second\n")


def test_file_size_of_missing_file(tmp_path):
    assert file_size(tmp_path / "absent") == 0


def test_quarantine_and_remove(tmp_path):
    damaged = tmp_path / "llt_columns.txt"
    damaged.write_text("garbage")
    moved = quarantine_file(damaged)
    assert moved.name == "llt_columns.txt.corrupt"
    assert not damaged.exists()
    assert remove_file(moved) is True
    assert remove_file(moved) is False


def test_advisory_lock_is_exclusive(tmp_path):
    lock = tmp_path / ".lock"
    with advisory_lock(lock, timeout=1.0):
        assert lock.read_text() == str(os.getpid())
        with pytest.raises(CacheLockedError):
            with advisory_lock(lock, timeout=0.05, poll=0.01):
                pass
    assert not lock.exists()

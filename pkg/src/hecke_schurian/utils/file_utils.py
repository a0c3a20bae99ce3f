"""
File helpers for the persistent column cache.

Writes go through a temporary sibling and an atomic ``replace``; concurrent
processes coordinate through an advisory lock file created exclusively.
"""

import os
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import structlog

from .error_handling import CacheError, CacheLockedError, retry_with_backoff

logger = structlog.get_logger(__name__)


@retry_with_backoff(max_attempts=3, retry_exceptions=(OSError,))
def atomic_write_file(file_path: Path, content: str, encoding: str = "utf-8") -> None:
    """
    Atomically replace ``file_path`` with ``content``.

    Raises:
        OSError: if the write still fails after retries
    """
    file_path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = file_path.with_suffix(file_path.suffix + f".{os.getpid()}.tmp")
    try:
        with temp_path.open("w", encoding=encoding) as f:
            f.write(content)
            f.flush()
            os.fsync(f.fileno())
        temp_path.replace(file_path)
        logger.debug("Atomically wrote file", path=str(file_path), bytes=len(content))
    finally:
        if temp_path.exists():
            temp_path.unlink()


def quarantine_file(file_path: Path, suffix: str = ".corrupt") -> Path:
    """Move a damaged file aside and return its new location."""
    target = file_path.with_suffix(file_path.suffix + suffix)
    file_path.replace(target)
    logger.warning("Moved damaged file aside", path=str(file_path), to=str(target))
    return target


def _try_create_lock(lock_path: Path) -> int:
    try:
        return os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError as e:
        raise CacheLockedError(
            f"cache lock held: {lock_path}", details={"lock": str(lock_path)}
        ) from e


@contextmanager
def advisory_lock(
    lock_path: Path, timeout: float = 30.0, poll: float = 0.05
) -> Iterator[None]:
    """
    Hold an exclusive advisory lock for the duration of the block.

    The lock is a file created with O_EXCL; its content is the holder's pid.
    """
    lock_path.parent.mkdir(parents=True, exist_ok=True)
    deadline = time.monotonic() + timeout
    while True:
        try:
            fd = _try_create_lock(lock_path)
            break
        except CacheLockedError:
            if time.monotonic() >= deadline:
                raise
            time.sleep(poll)
    try:
        os.write(fd, str(os.getpid()).encode("ascii"))
        os.close(fd)
        yield
    finally:
        try:
            lock_path.unlink()
        except FileNotFoundError:
            logger.warning("Lock file vanished before release", lock=str(lock_path))


def file_size(path: Path) -> int:
    """Size in bytes, 0 when the file does not exist."""
    try:
        return path.stat().st_size
    except FileNotFoundError:
        return 0


def remove_file(path: Path) -> bool:
    """Delete ``path`` if present; report whether anything was removed."""
    try:
        path.unlink()
    except FileNotFoundError:
        return False
    except OSError as e:
        raise CacheError(f"could not remove {path}: {e}") from e
    return True

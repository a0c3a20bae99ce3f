"""
Thread-safe store of computed canonical basis columns.

Columns are keyed by (e, convention, μ). Readers take a snapshot under a
re-entrant lock; a column is computed under its own key lock and published
once complete. Key locks are only ever taken in decreasing lexicographic
order of μ (the LLT recursion only descends), so they cannot deadlock.

The on-disk form is a UTF-8 text file::

    LLTCACHE v1
    3|above|7,1|7,1=0:1;6,2=1:1;4,2,2=1:1;3,2,2,1=2:1

with the empty partition written as ``-``.
"""

from __future__ import annotations

import threading
from collections.abc import Iterator, Mapping
from pathlib import Path
from typing import Any

from ..config import LoggerMixin, get_settings
from ..core.abacus import core_and_weight
from ..core.partitions import Partition, dominates, parse_partition
from ..utils.error_handling import CacheError, CacheLockedError, PartitionError
from ..utils.file_utils import (
    advisory_lock,
    atomic_write_file,
    file_size,
    quarantine_file,
    remove_file,
)
from .laurent import LaurentPoly

CACHE_HEADER = "LLTCACHE v1"

ColumnKey = tuple[int, str, Partition]
Column = Mapping[Partition, LaurentPoly]


def _partition_text(partition: Partition) -> str:
    return ",".join(str(x) for x in partition) if partition else "-"


def encode_record(key: ColumnKey, column: Column) -> str:
    e, convention, mu = key
    body = ";".join(
        f"{_partition_text(lam)}={poly.to_text()}"
        for lam, poly in sorted(column.items(), reverse=True)
    )
    return f"{e}|{convention}|{_partition_text(mu)}|{body}"


def decode_record(line: str) -> tuple[ColumnKey, dict[Partition, LaurentPoly]]:
    try:
        e_text, convention, mu_text, body = line.split("|")
        column: dict[Partition, LaurentPoly] = {}
        for entry in body.split(";") if body else []:
            lam_text, _, poly_text = entry.partition("=")
            column[parse_partition(lam_text)] = LaurentPoly.from_text(poly_text)
        return (int(e_text), convention, parse_partition(mu_text)), column
    except (ValueError, PartitionError) as e:
        raise CacheError(f"malformed cache record: {line[:80]!r}") from e


def column_problems(key: ColumnKey, column: Column) -> list[str]:
    """Reasons a column cannot be a canonical basis element (empty if sound)."""
    e, _, mu = key
    problems = []
    if column.get(mu) != LaurentPoly.constant(1):
        problems.append(f"coefficient at {mu} is not 1")
    block = core_and_weight(mu, e)
    for lam, poly in column.items():
        if lam == mu:
            continue
        if not poly.in_v_nat_v():
            problems.append(f"coefficient {poly} at {lam} is not in vN[v]")
        if lam.size != mu.size or not dominates(mu, lam):
            problems.append(f"{lam} is not dominated by {mu}")
        elif core_and_weight(lam, e) != block:
            problems.append(f"{lam} lies outside the block of {mu}")
    return problems


class ColumnCache(LoggerMixin):
    """In-memory column map with optional text-file persistence."""

    def __init__(
        self,
        path: Path | None = None,
        persist: bool = True,
        lock_timeout: float = 30.0,
    ):
        self.path = path
        self.persist = persist and path is not None
        self.lock_timeout = lock_timeout
        self._columns: dict[ColumnKey, dict[Partition, LaurentPoly]] = {}
        self._lock = threading.RLock()
        self._key_locks: dict[ColumnKey, threading.Lock] = {}
        self._dirty = False
        self.hits = 0
        self.misses = 0
        if self.persist:
            self.load()

    @property
    def lock_path(self) -> Path | None:
        return self.path.with_name(".lock") if self.path else None

    def __len__(self) -> int:
        with self._lock:
            return len(self._columns)

    def __contains__(self, key: object) -> bool:
        with self._lock:
            return key in self._columns

    def keys(self) -> Iterator[ColumnKey]:
        with self._lock:
            return iter(sorted(self._columns))

    def get(self, key: ColumnKey) -> dict[Partition, LaurentPoly] | None:
        with self._lock:
            column = self._columns.get(key)
            if column is None:
                self.misses += 1
                return None
            self.hits += 1
            return column

    def key_lock(self, key: ColumnKey) -> threading.Lock:
        with self._lock:
            lock = self._key_locks.get(key)
            if lock is None:
                lock = self._key_locks[key] = threading.Lock()
            return lock

    def publish(self, key: ColumnKey, column: Column) -> None:
        with self._lock:
            self._columns[key] = dict(column)
            self._dirty = True

    def load(self) -> int:
        """Read and verify the cache file; a damaged file is moved aside."""
        if self.path is None or not self.path.exists():
            return 0
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
            if not lines or lines[0].strip() != CACHE_HEADER:
                raise CacheError(f"unrecognised cache header in {self.path}")
            loaded: dict[ColumnKey, dict[Partition, LaurentPoly]] = {}
            for line in lines[1:]:
                if not line.strip():
                    continue
                key, column = decode_record(line)
                problems = column_problems(key, column)
                if problems:
                    raise CacheError(
                        f"cached column {key} failed verification",
                        details={"problems": problems[:5]},
                    )
                loaded[key] = column
        except (CacheError, UnicodeDecodeError) as e:
            self.logger.warning(
                "Column cache corrupt, starting empty", path=str(self.path), error=str(e)
            )
            quarantine_file(self.path)
            return 0
        with self._lock:
            loaded.update(self._columns)
            self._columns = loaded
        self.logger.debug("Column cache loaded", path=str(self.path), columns=len(loaded))
        return len(loaded)

    def _render(self, columns: Mapping[ColumnKey, Column]) -> str:
        lines = [CACHE_HEADER]
        lines.extend(encode_record(key, columns[key]) for key in sorted(columns))
        return "\n".join(lines) + "\n"

    def flush(self) -> bool:
        """Merge with the file on disk and write atomically; True if written."""
        if not self.persist or self.path is None:
            return False
        with self._lock:
            if not self._dirty:
                return False
            snapshot = dict(self._columns)
        lock_path = self.lock_path
        assert lock_path is not None
        try:
            with advisory_lock(lock_path, timeout=self.lock_timeout):
                merged: dict[ColumnKey, Column] = {}
                if self.path.exists():
                    merged.update(self._read_existing())
                merged.update(snapshot)
                atomic_write_file(self.path, self._render(merged))
        except CacheLockedError:
            self.logger.warning("Cache lock busy, columns not persisted", path=str(self.path))
            return False
        except OSError as e:
            raise CacheError(f"could not write {self.path}: {e}") from e
        with self._lock:
            self._dirty = False
        self.logger.debug("Column cache flushed", path=str(self.path), columns=len(merged))
        return True

    def _read_existing(self) -> dict[ColumnKey, Column]:
        assert self.path is not None
        existing: dict[ColumnKey, Column] = {}
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError:
            return existing
        if not lines or lines[0].strip() != CACHE_HEADER:
            return existing
        for line in lines[1:]:
            if line.strip():
                try:
                    key, column = decode_record(line)
                except CacheError:
                    continue
                existing[key] = column
        return existing

    def clear(self) -> int:
        """Drop all columns in memory and on disk; returns the count dropped."""
        with self._lock:
            dropped = len(self._columns)
            self._columns.clear()
            self._dirty = False
        if self.path is not None and self.path.exists():
            lock_path = self.lock_path
            assert lock_path is not None
            with advisory_lock(lock_path, timeout=self.lock_timeout):
                remove_file(self.path)
        return dropped

    def verify(self) -> dict[ColumnKey, list[str]]:
        """Re-check every column; maps bad keys to their problems."""
        with self._lock:
            snapshot = dict(self._columns)
        bad = {}
        for key, column in snapshot.items():
            problems = column_problems(key, column)
            if problems:
                bad[key] = problems
        return bad

    def stats(self) -> dict[str, Any]:
        with self._lock:
            per_e: dict[int, int] = {}
            for e, _, _ in self._columns:
                per_e[e] = per_e.get(e, 0) + 1
            return {
                "columns": len(self._columns),
                "columns_per_e": dict(sorted(per_e.items())),
                "hits": self.hits,
                "misses": self.misses,
                "path": str(self.path) if self.path else None,
                "file_bytes": file_size(self.path) if self.path else 0,
            }


_default_cache: ColumnCache | None = None
_default_lock = threading.Lock()


def get_column_cache() -> ColumnCache:
    """Process-wide cache configured from settings on first use."""
    global _default_cache
    with _default_lock:
        if _default_cache is None:
            settings = get_settings()
            _default_cache = ColumnCache(
                path=settings.cache_file,
                persist=settings.persist_cache,
                lock_timeout=settings.lock_timeout,
            )
        return _default_cache


def configure_column_cache(cache: ColumnCache | None) -> None:
    """Replace (or with ``None`` reset) the process-wide cache."""
    global _default_cache
    with _default_lock:
        _default_cache = cache

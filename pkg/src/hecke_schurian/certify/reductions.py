"""
Row, column and runner reductions.

Removing a common first row (or first column) from a set of partitions keeps
every decomposition number between them, graded in characteristic 0 and at
v = 1 in every characteristic. Scopes normalization moves a row set to the
normalized block of its class. Runner deletion is an optional shortcut that
is only trusted after a direct LLT comparison.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from ..algebra.column_cache import ColumnCache
from ..algebra.fock import decomp_submatrix
from ..algebra.laurent import LaurentPoly
from ..config import get_logger
from ..core.abacus import (
    BlockId,
    bead_counts,
    beta_numbers,
    canonical_bead_count,
    core_and_weight,
    from_beta,
)
from ..core.partitions import Partition
from ..core.scopes import class_of_block, normalize_class, scopes_path, transport
from ..utils.error_handling import ReductionError

logger = get_logger(__name__)


@dataclass(frozen=True)
class ReductionStep:
    """One reduction applied to a whole row set."""

    kind: str
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.detail}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ReductionStep:
        data = dict(data)
        return cls(kind=data.pop("kind"), detail=data)


def row_removal(lam: Partition, mu: Partition) -> tuple[Partition, Partition]:
    """Drop the common first row of λ and μ."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.part(1) != mu.part(1):
        raise ReductionError(
            f"first rows differ: {lam.part(1)} != {mu.part(1)}",
            details={"lambda": str(lam), "mu": str(mu)},
        )
    return Partition(lam[1:]), Partition(mu[1:])


def column_removal(lam: Partition, mu: Partition) -> tuple[Partition, Partition]:
    """Drop the common first column of λ and μ."""
    lam, mu = Partition(lam), Partition(mu)
    if len(lam) != len(mu):
        raise ReductionError(
            f"first columns differ: {len(lam)} != {len(mu)}",
            details={"lambda": str(lam), "mu": str(mu)},
        )
    return Partition(x - 1 for x in lam), Partition(x - 1 for x in mu)


def remove_first_row(rows: Sequence[Partition]) -> list[Partition]:
    """Row removal applied to every partition of ``rows`` at once."""
    if not rows:
        return []
    first = rows[0]
    return [row_removal(lam, first)[0] for lam in rows]


def remove_first_column(rows: Sequence[Partition]) -> list[Partition]:
    if not rows:
        return []
    first = rows[0]
    return [column_removal(lam, first)[0] for lam in rows]


def _weight(rows: Sequence[Partition], e: int) -> int:
    return core_and_weight(rows[0], e)[1]


@dataclass
class ReducedRows:
    """A row set together with the reductions that produced it."""

    rows: list[Partition]
    e: int
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def block(self) -> BlockId:
        return BlockId.of(self.rows[0], self.e)

    @property
    def weight(self) -> int:
        return _weight(self.rows, self.e)


def apply_removals(reduced: ReducedRows, kinds: Sequence[str]) -> ReducedRows:
    """Apply the named removals ("row" or "column") in order."""
    rows = list(reduced.rows)
    steps = list(reduced.steps)
    for kind in kinds:
        before = _weight(rows, reduced.e)
        if kind == "row":
            rows = remove_first_row(rows)
        elif kind == "column":
            rows = remove_first_column(rows)
        else:
            raise ReductionError(f"unknown removal {kind!r}")
        steps.append(
            ReductionStep(kind, {"weight_before": before, "weight_after": _weight(rows, reduced.e)})
        )
    return ReducedRows(rows=rows, e=reduced.e, steps=steps)


def reduce_common(reduced: ReducedRows) -> ReducedRows:
    """
    Remove common first rows and columns while either exists and the row set
    stays in a block of weight at least 2.
    """
    current = reduced
    while True:
        rows = current.rows
        if not rows[0]:
            return current
        if all(lam.part(1) == rows[0].part(1) for lam in rows):
            kind = "row"
        elif all(len(lam) == len(rows[0]) for lam in rows):
            kind = "column"
        else:
            return current
        candidate = apply_removals(current, [kind])
        if candidate.weight < 2:
            return current
        current = candidate


def normalize_rows(reduced: ReducedRows) -> ReducedRows:
    """Transport the row set to the normalized block of its Scopes class."""
    block = reduced.block
    path = scopes_path(block)
    if not path:
        return reduced
    rows = [transport(lam, reduced.e, path) for lam in reduced.rows]
    step = ReductionStep(
        "scopes",
        {
            "from_class": str(class_of_block(block)),
            "to_class": str(normalize_class(block)),
            "moves": [list(move) for move in path],
        },
    )
    return ReducedRows(rows=rows, e=reduced.e, steps=[*reduced.steps, step])


# Runner deletion


def _common_frame(rows: Sequence[Partition], e: int) -> int:
    core, _ = core_and_weight(rows[0], e)
    r = canonical_bead_count(core, e)
    longest = max(len(lam) for lam in rows)
    while r < longest:
        r += e
    return r


def deletable_runners(rows: Sequence[Partition], e: int) -> list[int]:
    """
    Runners carrying no quotient data in any row whose bead count differs
    from every other runner's by at least the weight.
    """
    r = _common_frame(rows, e)
    weight = _weight(rows, e)
    counts = bead_counts(beta_numbers(rows[0], r), e)
    result = []
    for j in range(e):
        if any(abs(counts[j] - counts[k]) < weight for k in range(e) if k != j):
            continue
        if all(_runner_is_packed(lam, e, j, r) for lam in rows):
            result.append(j)
    return result


def _runner_is_packed(partition: Partition, e: int, j: int, r: int) -> bool:
    levels = sorted(x // e for x in beta_numbers(partition, r) if x % e == j)
    return levels == list(range(len(levels)))


def delete_runner(partition: Partition, e: int, j: int, r: int) -> Partition:
    """The partition whose (e−1)-runner display is the r-bead display minus runner j."""
    beads = []
    for x in beta_numbers(partition, r):
        level, runner = divmod(x, e)
        if runner == j:
            continue
        beads.append(level * (e - 1) + (runner if runner < j else runner - 1))
    return from_beta(beads)


def reduce_runners(rows: Sequence[Partition], e: int, floor: int = 4) -> tuple[list[Partition], int]:
    """Delete runners one at a time while e exceeds ``floor``."""
    rows = [Partition(lam) for lam in rows]
    while e > floor:
        runners = deletable_runners(rows, e)
        if not runners:
            break
        r = _common_frame(rows, e)
        rows = [delete_runner(lam, e, runners[-1], r) for lam in rows]
        e -= 1
    return rows, e


def char0_matrix(
    rows: Sequence[Partition],
    e: int,
    cache: ColumnCache | None = None,
    runner_reduction: bool = False,
) -> tuple[list[list[LaurentPoly]], ReductionStep | None]:
    """
    Characteristic-0 submatrix of ``rows``, optionally via runner deletion.

    A runner-reduced matrix is compared with the direct computation and
    discarded, with a warning, if they differ.
    """
    direct = decomp_submatrix(rows, e, cache=cache)
    if not runner_reduction or e <= 4:
        return direct, None
    small_rows, small_e = reduce_runners(rows, e)
    if small_e == e:
        return direct, None
    reduced = decomp_submatrix(small_rows, small_e, cache=cache)
    if reduced != direct:
        logger.warning(
            "Runner reduction disagrees with direct LLT; using direct matrix",
            e=e,
            reduced_e=small_e,
            rows=[str(lam) for lam in rows],
        )
        return direct, None
    step = ReductionStep(
        "runner",
        {"e_before": e, "e_after": small_e, "rows": [str(lam) for lam in small_rows], "verified": True},
    )
    return reduced, step

"""
Scopes equivalences between blocks.

A block is recorded by the bead counts of its core display in the canonical
frame (runner 0 holds exactly one bead). Swapping adjacent runners whose
counts differ by at least the weight is a graded Morita equivalence, so the
decomposition matrices of the two blocks agree after relabelling partitions
through the swap.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import structlog

from ..utils.error_handling import AbacusError, PartitionError, ScopesConditionError
from .abacus import (
    BlockId,
    bead_counts,
    beta_numbers,
    canonical_bead_count,
    core_and_weight,
    core_bead_counts,
    core_from_counts,
    from_beta,
)
from .partitions import Partition, conjugate

logger = structlog.get_logger(__name__)

ScopesMove = tuple[int, int]

_CLASS_PATTERN = re.compile(r"^\s*\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*$")


@dataclass(frozen=True, order=True)
class ScopesClass:
    """Bead counts of a core display together with a weight."""

    e: int
    counts: tuple[int, ...]
    weight: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.e:
            raise AbacusError(f"class {list(self.counts)} needs {self.e} entries")
        if any(c < 0 for c in self.counts):
            raise AbacusError(f"bead counts must be non-negative: {list(self.counts)}")

    @classmethod
    def parse(cls, text: str, weight: int) -> ScopesClass:
        """Parse the literal "[1,4,7]"."""
        match = _CLASS_PATTERN.match(text)
        if not match:
            raise PartitionError(f"malformed Scopes class literal {text!r}", position=0)
        counts = tuple(int(x) for x in match.group(1).split(","))
        return cls(e=len(counts), counts=counts, weight=weight)

    @property
    def is_canonical(self) -> bool:
        return self.counts[0] == 1

    @property
    def is_normalized(self) -> bool:
        """Canonical frame and no adjacent swap available."""
        if not self.is_canonical:
            return False
        return all(
            1 <= self.counts[i] <= self.counts[i - 1] + self.weight - 1
            for i in range(1, self.e)
        )

    @property
    def signature(self) -> tuple[int, int]:
        """(s₁, s₂) of the triple [1, s₁, s₂]; e = 3 only."""
        if self.e != 3:
            raise AbacusError("the [1,s1,s2] signature is defined for e = 3 only")
        canonical = canonicalize(self)
        return canonical.counts[1], canonical.counts[2]

    def core(self) -> Partition:
        return core_from_counts(self.counts, self.e)

    def block(self) -> BlockId:
        return BlockId(e=self.e, core=self.core(), weight=self.weight)

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.counts) + "]"


def class_of_block(block: BlockId) -> ScopesClass:
    """Canonical-frame class of a block (not normalized)."""
    return ScopesClass(
        e=block.e, counts=core_bead_counts(block.core, block.e), weight=block.weight
    )


def canonicalize(cls: ScopesClass) -> ScopesClass:
    """Re-base the bead count so that runner 0 holds a single bead."""
    return class_of_block(cls.block())


def rotate_class(cls: ScopesClass) -> ScopesClass:
    """
    Drop the bead at position 0: [c₀, …, c_{e−1}] → [c₁, …, c_{e−1}, c₀ − 1].

    Raises:
        AbacusError: if runner 0 holds fewer than two beads
    """
    if cls.counts[0] < 2:
        raise AbacusError(
            f"rotating {cls} would leave runner 0 without beads",
            details={"counts": list(cls.counts)},
        )
    rotated = ScopesClass(
        e=cls.e, counts=(*cls.counts[1:], cls.counts[0] - 1), weight=cls.weight
    )
    if rotated.core() != cls.core():
        raise AbacusError(f"rotation of {cls} changed the core")
    return rotated


def _lift(partition: Partition, e: int, r: int) -> int:
    while r < len(partition):
        r += e
    return r


def _swap_runners(partition: Partition, e: int, i: int, r: int) -> Partition:
    beads = []
    for x in beta_numbers(partition, r):
        if x % e == i:
            beads.append(x - 1)
        elif x % e == i - 1:
            beads.append(x + 1)
        else:
            beads.append(x)
    return from_beta(beads)


def phi(partition: Partition, e: int, i: int, r: int) -> Partition:
    """
    Swap runners i−1 and i of the r-bead display.

    Raises:
        ScopesConditionError: if runner i carries fewer than ``w`` beads more
            than runner i−1, where ``w`` is the weight of ``partition``
    """
    if not 1 <= i < e:
        raise AbacusError(f"runner index {i} outside 1..{e - 1}")
    r = _lift(partition, e, r)
    counts = bead_counts(beta_numbers(partition, r), e)
    _, weight = core_and_weight(partition, e)
    gap = counts[i] - counts[i - 1]
    if gap < weight:
        raise ScopesConditionError(gap, weight, details={"runner": i, "r": r})
    return _swap_runners(partition, e, i, r)


def phi_inverse(partition: Partition, e: int, i: int, r: int) -> Partition:
    """Undo :func:`phi`; runner i−1 must now be the longer one."""
    r = _lift(partition, e, r)
    counts = bead_counts(beta_numbers(partition, r), e)
    _, weight = core_and_weight(partition, e)
    gap = counts[i - 1] - counts[i]
    if gap < weight:
        raise ScopesConditionError(gap, weight, details={"runner": i, "r": r})
    return _swap_runners(partition, e, i, r)


def _best_swap(counts: Sequence[int], weight: int) -> int | None:
    best: int | None = None
    best_gap = weight - 1
    for i in range(1, len(counts)):
        gap = counts[i] - counts[i - 1]
        if gap > best_gap:
            best, best_gap = i, gap
    return best


def scopes_path(block: BlockId) -> list[ScopesMove]:
    """
    Greedy sequence of (runner, bead count) swaps ending at the normalized class.

    Each step swaps the adjacent pair with the largest admissible gap and then
    re-bases to the canonical frame.
    """
    if block.weight == 0:
        return []
    path: list[ScopesMove] = []
    core = block.core
    counts = core_bead_counts(core, block.e)
    bound = block.e * block.weight * max(counts) + block.e
    while (i := _best_swap(counts, block.weight)) is not None:
        r = canonical_bead_count(core, block.e)
        path.append((i, r))
        core = _swap_runners(core, block.e, i, r)
        counts = core_bead_counts(core, block.e)
        if len(path) > bound:
            raise AbacusError(f"Scopes normalization of {block} did not terminate")
    logger.debug("Scopes path computed", block=str(block), steps=len(path))
    return path


def transport(
    partition: Partition, e: int, path: Iterable[ScopesMove]
) -> Partition:
    """Apply Φ along ``path``."""
    for i, r in path:
        partition = phi(partition, e, i, r)
    return partition


def transport_back(
    partition: Partition, e: int, path: Sequence[ScopesMove]
) -> Partition:
    """Inverse of :func:`transport` along the same path."""
    for i, r in reversed(path):
        partition = phi_inverse(partition, e, i, r)
    return partition


def normalize_class(block: BlockId | ScopesClass) -> ScopesClass:
    """Normalized representative of the Scopes class; idempotent."""
    if isinstance(block, ScopesClass):
        block = block.block()
    core = block.core
    for i, r in scopes_path(block):
        core = _swap_runners(core, block.e, i, r)
    return ScopesClass(
        e=block.e, counts=core_bead_counts(core, block.e), weight=block.weight
    )


def normalized_classes(e: int, weight: int) -> list[ScopesClass]:
    """All normalized classes for (e, w), in lexicographic order."""
    result: list[ScopesClass] = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == e:
            result.append(ScopesClass(e=e, counts=tuple(prefix), weight=weight))
            return
        for c in range(1, prefix[-1] + weight):
            extend([*prefix, c])

    extend([1])
    return result


def conjugate_class(cls: ScopesClass, weight: int | None = None) -> ScopesClass:
    """Normalized class of the block with conjugated core."""
    w = cls.weight if weight is None else weight
    block = BlockId(e=cls.e, core=conjugate(cls.core()), weight=w)
    return normalize_class(block)


def is_rouquier(block: BlockId | ScopesClass) -> bool:
    """Every adjacent gap of the normalized class is at least w − 1."""
    normalized = normalize_class(block)
    w = normalized.weight
    return all(
        normalized.counts[i] - normalized.counts[i - 1] >= w - 1
        for i in range(1, normalized.e)
    )

"""
Beta-numbers, abacus displays, cores, weights and quotients.

Bead position ``x`` sits on runner ``x % e`` at level ``x // e``. Quotient
components are ordered by the position of the lowest bead on each runner of
the core display, largest position first, so the ordering does not depend on
the number of beads chosen.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..utils.error_handling import AbacusError, PartitionError
from .partitions import EMPTY, Partition, parse_partition, partitions_of

Quotient = tuple[Partition, ...]


def beta_numbers(partition: Partition, r: int) -> tuple[int, ...]:
    """β_i = λ_i − i + r, strictly decreasing, of length r."""
    if r < len(partition):
        raise AbacusError(
            f"bead count {r} is smaller than the {len(partition)} parts of {partition}",
            details={"r": r, "length": len(partition)},
        )
    return tuple(partition.part(i) - i + r for i in range(1, r + 1))


def from_beta(beads: Iterable[int]) -> Partition:
    """Inverse of :func:`beta_numbers` for any set of distinct non-negative beads."""
    ordered = sorted(beads, reverse=True)
    if len(set(ordered)) != len(ordered) or (ordered and ordered[-1] < 0):
        raise AbacusError(f"not a bead configuration: {ordered}")
    r = len(ordered)
    return Partition(b + i - r for i, b in enumerate(ordered, start=1))


def bead_counts(beads: Iterable[int], e: int) -> tuple[int, ...]:
    counts = [0] * e
    for b in beads:
        counts[b % e] += 1
    return tuple(counts)


def _runner_levels(beads: Iterable[int], e: int) -> list[list[int]]:
    runners: list[list[int]] = [[] for _ in range(e)]
    for b in sorted(beads, reverse=True):
        runners[b % e].append(b // e)
    return runners


def core_and_weight(partition: Partition, e: int) -> tuple[Partition, int]:
    """Push every bead up its runner; the weight counts the slides."""
    if e < 2:
        raise AbacusError(f"e must be at least 2, got {e}")
    beads = beta_numbers(partition, len(partition))
    weight = 0
    core_beads: list[int] = []
    for runner, levels in enumerate(_runner_levels(beads, e)):
        m = len(levels)
        weight += sum(levels) - m * (m - 1) // 2
        core_beads.extend(level * e + runner for level in range(m))
    return from_beta(core_beads), weight


def is_core(partition: Partition, e: int) -> bool:
    return core_and_weight(partition, e)[1] == 0


def canonical_bead_count(core: Partition, e: int) -> int:
    """Bead count at which runner 0 of the core display holds a single bead."""
    return len(core) + e


def core_bead_counts(core: Partition, e: int, r: int | None = None) -> tuple[int, ...]:
    """Beads per runner of the core display (canonical frame by default)."""
    if r is None:
        r = canonical_bead_count(core, e)
    return bead_counts(beta_numbers(core, r), e)


def core_from_counts(counts: Sequence[int], e: int) -> Partition:
    """The e-core whose display has ``counts[j]`` beads on runner ``j``."""
    if len(counts) != e or any(c < 0 for c in counts):
        raise AbacusError(f"expected {e} non-negative bead counts, got {list(counts)}")
    return from_beta(
        level * e + runner for runner, c in enumerate(counts) for level in range(c)
    )


def _require_core(core: Partition, e: int) -> None:
    if not is_core(core, e):
        raise AbacusError(f"{core} is not a {e}-core", details={"core": str(core)})


def runner_positions(core: Partition, e: int, r: int | None = None) -> tuple[int, ...]:
    """Sorted positions p_0 < … < p_{e−1} of the lowest bead on each runner."""
    _require_core(core, e)
    if r is None:
        r = canonical_bead_count(core, e)
    counts = bead_counts(beta_numbers(core, r), e)
    return tuple(sorted((c - 1) * e + j for j, c in enumerate(counts)))


@lru_cache(maxsize=4096)
def runner_order(core: Partition, e: int) -> tuple[int, ...]:
    """Runner indices in quotient order: lowest-bead position decreasing."""
    counts = core_bead_counts(core, e)
    return tuple(sorted(range(e), key=lambda j: (counts[j] - 1) * e + j, reverse=True))


def _frame(core: Partition, e: int, minimum_length: int) -> int:
    r = canonical_bead_count(core, e)
    while r < minimum_length:
        r += e
    return r


def quotient(partition: Partition, e: int) -> Quotient:
    """e-quotient read from runners in decreasing lowest-bead order."""
    if e < 2:
        raise AbacusError(f"e must be at least 2, got {e}")
    core, _ = core_and_weight(partition, e)
    r = _frame(core, e, len(partition))
    runners = _runner_levels(beta_numbers(partition, r), e)
    components = []
    for runner in runner_order(core, e):
        levels = runners[runner]
        m = len(levels)
        components.append(Partition(lvl - (m - k) for k, lvl in enumerate(levels, 1)))
    return tuple(components)


def from_quotient(core: Partition, components: Sequence[Partition], e: int) -> Partition:
    """The unique partition with the given core and quotient."""
    _require_core(core, e)
    if len(components) != e:
        raise AbacusError(f"quotient needs {e} components, got {len(components)}")
    components = [Partition(c) for c in components]
    order = runner_order(core, e)
    counts = core_bead_counts(core, e)
    shift = 0
    while any(
        counts[runner] + shift < len(comp)
        for runner, comp in zip(order, components, strict=True)
    ):
        shift += 1
    beads: list[int] = []
    for runner, comp in zip(order, components, strict=True):
        m = counts[runner] + shift
        beads.extend((comp.part(k) + m - k) * e + runner for k in range(1, m + 1))
    return from_beta(beads)


def quotient_sizes(partition: Partition, e: int) -> tuple[int, ...]:
    return tuple(c.size for c in quotient(partition, e))


def format_quotient(components: Sequence[Partition]) -> str:
    """Text such as "((1),(2,1),∅,∅)"."""
    parts = ["∅" if not c else f"({','.join(map(str, c))})" for c in components]
    return f"({','.join(parts)})"


def multipartitions(total: int, length: int) -> list[Quotient]:
    """All ``length``-multipartitions of ``total``."""
    if length == 0:
        return [()] if total == 0 else []
    result: list[Quotient] = []
    for first in range(total, -1, -1):
        for head in partitions_of(first):
            for tail in multipartitions(total - first, length - 1):
                result.append((head, *tail))
    return result


@dataclass(frozen=True, order=True)
class BlockId:
    """A block B(core, weight) at quantum characteristic e."""

    e: int
    core: Partition
    weight: int

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise AbacusError(f"weight must be non-negative, got {self.weight}")
        object.__setattr__(self, "core", Partition(self.core))
        _require_core(self.core, self.e)

    @classmethod
    def of(cls, partition: Partition, e: int) -> BlockId:
        core, weight = core_and_weight(partition, e)
        return cls(e=e, core=core, weight=weight)

    @property
    def size(self) -> int:
        return self.core.size + self.e * self.weight

    def contains(self, partition: Partition) -> bool:
        return core_and_weight(partition, self.e) == (self.core, self.weight)

    def partitions(self) -> tuple[Partition, ...]:
        return block_partitions(self)

    def __str__(self) -> str:
        return f"B({self.core}, {self.weight}) at e={self.e}"


@lru_cache(maxsize=256)
def block_partitions(block: BlockId) -> tuple[Partition, ...]:
    """Every partition in the block, lexicographically decreasing.

    Lexicographic order refines dominance, so earlier entries are never
    dominated by later ones.
    """
    found = {
        from_quotient(block.core, q, block.e)
        for q in multipartitions(block.weight, block.e)
    }
    return tuple(sorted(found, reverse=True))


@dataclass(frozen=True)
class AbacusDisplay:
    """Occupied levels of each runner for a fixed bead count."""

    e: int
    bead_count: int
    runners: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, partition: Partition, e: int, r: int | None = None) -> AbacusDisplay:
        if e < 2:
            raise AbacusError(f"e must be at least 2, got {e}")
        if r is None:
            core, _ = core_and_weight(partition, e)
            r = _frame(core, e, len(partition))
        levels = _runner_levels(beta_numbers(partition, r), e)
        return cls(e=e, bead_count=r, runners=tuple(tuple(sorted(x)) for x in levels))

    @property
    def beads(self) -> tuple[int, ...]:
        return tuple(
            sorted(
                (level * self.e + j for j, lv in enumerate(self.runners) for level in lv),
                reverse=True,
            )
        )

    def partition(self) -> Partition:
        return from_beta(self.beads)

    def render(self, bead: str = "b", gap: str = "-") -> str:
        """One row per level, one column per runner."""
        depth = max((max(lv) for lv in self.runners if lv), default=-1) + 2
        occupied = [set(lv) for lv in self.runners]
        rows = []
        for level in range(depth):
            rows.append(
                " ".join(bead if level in occupied[j] else gap for j in range(self.e))
            )
        return "\n".join(rows)


def parse_multipartition(text: str, e: int) -> Quotient:
    """Parse "1|2,1||" style text into an e-tuple of partitions."""
    chunks = text.split("|")
    if len(chunks) != e:
        raise PartitionError(
            f"expected {e} components separated by '|', got {len(chunks)}",
            position=len(text),
        )
    return tuple(parse_partition(c) if c.strip() else EMPTY for c in chunks)


def quotient_product(sizes: Sequence[int]) -> list[Quotient]:
    """Multipartitions with prescribed component sizes."""
    return [tuple(q) for q in product(*(partitions_of(s) for s in sizes))]

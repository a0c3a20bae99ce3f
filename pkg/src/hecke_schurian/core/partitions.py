"""
Partition combinatorics.

Partitions are immutable tuples of positive, weakly decreasing parts. Nodes
are 1-based (row, column) pairs; "below" always means a strictly larger row
index and "above" a strictly smaller one.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from functools import lru_cache
from itertools import accumulate
from typing import NamedTuple

from ..utils.error_handling import IncomparableSizesError, PartitionError

EMPTY_TOKENS = frozenset({"", "-", "∅", "()", "0"})


class Node(NamedTuple):
    """A box of a Young diagram."""

    row: int
    col: int

    def residue(self, e: int) -> int:
        """Content of the node reduced mod e."""
        return (self.col - self.row) % e


class Partition(tuple[int, ...]):
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> Partition:
        values = tuple(int(x) for x in parts)
        while values and values[-1] == 0:
            values = values[:-1]
        for k, x in enumerate(values):
            if x <= 0:
                raise PartitionError(f"parts must be positive, got {x}", position=k)
            if k and x > values[k - 1]:
                raise PartitionError(
                    f"parts must be weakly decreasing: {values}", position=k
                )
        return super().__new__(cls, values)

    @classmethod
    def trusted(cls, parts: tuple[int, ...]) -> Partition:
        """Wrap parts already known to form a partition, skipping validation."""
        return tuple.__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, row: int) -> int:
        """1-based part lookup; rows past the end have length 0."""
        return self[row - 1] if 0 < row <= len(self) else 0

    def nodes(self) -> Iterator[Node]:
        for r, part in enumerate(self, start=1):
            for c in range(1, part + 1):
                yield Node(r, c)

    def conjugate(self) -> Partition:
        return conjugate(self)

    def add_node(self, node: Node) -> Partition:
        parts = list(self)
        if node.row == len(parts) + 1:
            parts.append(0)
        if node.row > len(parts) or parts[node.row - 1] != node.col - 1:
            raise PartitionError(f"{node} is not addable to {self}")
        parts[node.row - 1] += 1
        return Partition(parts)

    def remove_node(self, node: Node) -> Partition:
        if self.part(node.row) != node.col or self.part(node.row + 1) >= node.col:
            raise PartitionError(f"{node} is not removable from {self}")
        parts = list(self)
        parts[node.row - 1] -= 1
        return Partition(parts)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self) if self else "∅"

    def __repr__(self) -> str:
        return f"Partition(({', '.join(str(x) for x in self)}))"


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    """
    Parse "4,2^2" style text; the exponent shorthand repeats a part.

    Raises:
        PartitionError: with the character offset of the first bad token
    """
    stripped = text.strip()
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
    if stripped.strip() in EMPTY_TOKENS:
        return EMPTY

    offset = text.find(stripped)
    parts: list[int] = []
    for token in stripped.split(","):
        position = offset + (len(token) - len(token.lstrip()))
        body = token.strip()
        base, _, exponent = body.partition("^")
        try:
            value = int(base)
            count = int(exponent) if exponent else 1
        except ValueError:
            raise PartitionError(
                f"malformed partition token {body!r} in {text!r}", position=position
            ) from None
        if value <= 0 or count <= 0:
            raise PartitionError(
                f"non-positive entry {body!r} in {text!r}", position=position
            )
        if parts and value > parts[-1]:
            raise PartitionError(
                f"parts of {text!r} are not weakly decreasing", position=position
            )
        parts.extend([value] * count)
        offset += len(token) + 1
    return Partition(parts)


def parse_partition_list(text: str) -> list[Partition]:
    """Parse a semicolon-separated list such as "7,1;6,2;4,4;4,2,2"."""
    return [parse_partition(chunk) for chunk in text.split(";") if chunk.strip()]


def format_partition(partition: Partition, compact: bool = False) -> str:
    """Comma-separated parts; ``compact`` uses exponent shorthand."""
    if not partition:
        return "∅"
    if not compact:
        return ",".join(str(x) for x in partition)
    chunks: list[str] = []
    for value in sorted(set(partition), reverse=True):
        count = partition.count(value)
        chunks.append(f"{value}^{count}" if count > 1 else str(value))
    return ",".join(chunks)


def conjugate(partition: Iterable[int]) -> Partition:
    lam = Partition(partition)
    if not lam:
        return EMPTY
    return Partition(sum(1 for x in lam if x >= c) for c in range(1, lam[0] + 1))


def dominates(lam: Partition, mu: Partition) -> bool:
    """
    True iff ``lam`` dominates ``mu`` (reflexive).

    Raises:
        IncomparableSizesError: if the partitions have different sizes
    """
    if sum(lam) != sum(mu):
        raise IncomparableSizesError(sum(lam), sum(mu))
    width = max(len(lam), len(mu))
    left = accumulate(tuple(lam) + (0,) * (width - len(lam)))
    right = accumulate(tuple(mu) + (0,) * (width - len(mu)))
    return all(a >= b for a, b in zip(left, right, strict=True))


def strictly_dominates(lam: Partition, mu: Partition) -> bool:
    return lam != mu and dominates(lam, mu)


def is_e_regular(partition: Partition, e: int) -> bool:
    """No part value repeated e or more times."""
    run = 1
    for k in range(1, len(partition)):
        run = run + 1 if partition[k] == partition[k - 1] else 1
        if run >= e:
            return False
    return e > 1 or not partition


def addable_nodes(partition: Partition) -> list[Node]:
    """All addable nodes, by increasing row."""
    return [
        Node(r, partition.part(r) + 1)
        for r in range(1, len(partition) + 2)
        if r == 1 or partition.part(r - 1) > partition.part(r)
    ]


def removable_nodes(partition: Partition) -> list[Node]:
    """All removable nodes, by increasing row."""
    return [
        Node(r, partition[r - 1])
        for r in range(1, len(partition) + 1)
        if partition.part(r + 1) < partition[r - 1]
    ]


def boundary_nodes(
    partition: Partition, e: int, i: int
) -> tuple[list[Node], list[Node]]:
    """Addable and removable nodes of residue ``i``, each by increasing row."""
    if not 0 <= i < e:
        raise PartitionError(f"residue {i} outside 0..{e - 1}")
    addable = [n for n in addable_nodes(partition) if n.residue(e) == i]
    removable = [n for n in removable_nodes(partition) if n.residue(e) == i]
    return addable, removable


def hook_lengths(partition: Partition) -> dict[Node, int]:
    lam = Partition(partition)
    conj = conjugate(lam)
    return {
        node: lam[node.row - 1] - node.col + conj[node.col - 1] - node.row + 1
        for node in lam.nodes()
    }


def residue_content(partition: Partition, e: int) -> tuple[int, ...]:
    """Number of nodes of each residue; equal contents share an e-block."""
    counts = [0] * e
    for node in partition.nodes():
        counts[node.residue(e)] += 1
    return tuple(counts)


@lru_cache(maxsize=128)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (EMPTY,)
    result: list[Partition] = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            result.append(Partition((first, *rest)))
    return tuple(result)

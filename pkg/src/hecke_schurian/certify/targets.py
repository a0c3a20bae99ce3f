"""
The three lower-unitriangular submatrices whose occurrence (in matching
characteristic-0 and characteristic-p form) forces a block to be
Schurian-infinite.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import permutations

from ..algebra.laurent import ONE, V, ZERO, LaurentPoly

V2 = V * V


class TargetName(str, Enum):
    DAGGER = "DAGGER"
    DDAGGER = "DDAGGER"
    SPADE = "SPADE"


@dataclass(frozen=True)
class TargetMatrix:
    name: TargetName
    symbol: str
    entries: list[list[LaurentPoly]]

    @property
    def size(self) -> int:
        return len(self.entries)

    def at_one(self) -> list[list[int]]:
        return [[c.at_one() for c in row] for row in self.entries]

    def match(self, matrix: Sequence[Sequence[LaurentPoly]]) -> tuple[int, ...] | None:
        """
        An ordering σ with matrix[σ(i)][σ(j)] equal to the target, if any.

        Rows and columns of ``matrix`` are indexed by the same partitions.
        """
        n = self.size
        if len(matrix) != n or any(len(row) != n for row in matrix):
            return None
        for order in permutations(range(n)):
            if all(
                matrix[order[i]][order[j]] == self.entries[i][j]
                for i in range(n)
                for j in range(n)
            ):
                return order
        return None

    def __str__(self) -> str:
        return f"{self.name.value} ({self.symbol})"


DAGGER = TargetMatrix(
    TargetName.DAGGER,
    "†",
    [
        [ONE, ZERO, ZERO, ZERO],
        [V, ONE, ZERO, ZERO],
        [ZERO, V, ONE, ZERO],
        [V, V2, V, ONE],
    ],
)

DDAGGER = TargetMatrix(
    TargetName.DDAGGER,
    "‡",
    [
        [ONE, ZERO, ZERO, ZERO],
        [V, ONE, ZERO, ZERO],
        [V, ZERO, ONE, ZERO],
        [V2, V, V, ONE],
    ],
)

SPADE = TargetMatrix(
    TargetName.SPADE,
    "♠",
    [
        [ONE, ZERO, ZERO, ZERO, ZERO],
        [ZERO, ONE, ZERO, ZERO, ZERO],
        [V, V, ONE, ZERO, ZERO],
        [ZERO, V2, V, ONE, ZERO],
        [V2, ZERO, V, ZERO, ONE],
    ],
)

TARGETS = {t.name: t for t in (DAGGER, DDAGGER, SPADE)}


def target_by_name(name: str | TargetName) -> TargetMatrix:
    return TARGETS[TargetName(name)]

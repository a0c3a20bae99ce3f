"""
Restriction and Scopes chains between blocks.

A chain starts from a row set whose characteristic-p entries are known and
moves it, one block at a time, by removing every removable i-node (which
bounds the new entries from above) or by a Scopes swap (which carries them
over exactly). Moves only ever shrink the partitions, so chain search is a
finite breadth-first search.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from ..algebra.charp import restriction_bound
from ..config import get_logger, get_settings
from ..core.abacus import BlockId, bead_counts, beta_numbers, canonical_bead_count, core_and_weight
from ..core.partitions import Partition, boundary_nodes
from ..core.scopes import ScopesClass, class_of_block, phi
from ..utils.error_handling import ReductionError, RestrictionError, ScopesConditionError

logger = get_logger(__name__)

Rows = tuple[Partition, ...]

# Chains out of the weight-4 Rouquier class [1,4,7] at e = 3, as canonical-frame classes
CHAIN_CLASSES: dict[str, tuple[str, ...]] = {
    "[1,4,6]": ("[1,4,7]", "[1,7,4]", "[1,4,6]"),
    "[1,3,6]": ("[1,4,7]", "[1,7,3]", "[1,3,6]"),
    "[1,3,5]": ("[1,4,7]", "[1,7,3]", "[1,3,6]", "[1,6,3]", "[1,3,5]"),
}


@dataclass(frozen=True)
class ChainStep:
    """One move; ``parameter`` is k for a restriction and r for a Scopes swap."""

    kind: str
    i: int
    parameter: int
    source_class: str
    target_class: str
    before: Rows
    after: Rows

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "i": self.i,
            "k" if self.kind == "restriction" else "r": self.parameter,
            "from_class": self.source_class,
            "to_class": self.target_class,
            "rows": [str(lam) for lam in self.after],
        }


def class_label(rows: Sequence[Partition], e: int) -> str:
    return str(class_of_block(BlockId.of(rows[0], e)))


def restrict_rows(rows: Sequence[Partition], e: int, i: int) -> tuple[Rows, int] | None:
    """Remove all removable i-nodes when every row meets the restriction hypotheses."""
    k = len(boundary_nodes(rows[0], e, i)[1])
    if k == 0:
        return None
    result = []
    for lam in rows:
        try:
            bound = restriction_bound(lam, lam, i, k, e)
        except RestrictionError:
            return None
        result.append(bound.lam_bar)
    return tuple(result), k


def scopes_rows(rows: Sequence[Partition], e: int, i: int) -> tuple[Rows, int] | None:
    """Swap runners i−1 and i in the canonical frame when the gap allows it."""
    core, weight = core_and_weight(rows[0], e)
    r = canonical_bead_count(core, e)
    counts = bead_counts(beta_numbers(core, r), e)
    if counts[i] - counts[i - 1] < weight:
        return None
    try:
        return tuple(phi(lam, e, i, r) for lam in rows), r
    except ScopesConditionError:
        return None


def _moves(rows: Rows, e: int) -> list[ChainStep]:
    source = class_label(rows, e)
    steps = []
    for i in range(e):
        moved = restrict_rows(rows, e, i)
        if moved is not None:
            after, k = moved
            steps.append(ChainStep("restriction", i, k, source, class_label(after, e), rows, after))
    for i in range(1, e):
        moved = scopes_rows(rows, e, i)
        if moved is not None:
            after, r = moved
            steps.append(ChainStep("scopes", i, r, source, class_label(after, e), rows, after))
    return steps


def follow_chain(rows: Sequence[Partition], classes: Sequence[str], e: int) -> list[ChainStep]:
    """
    Realize a chain given by its sequence of canonical-frame classes.

    Raises:
        ReductionError: if no single move reaches the next class
    """
    current: Rows = tuple(Partition(lam) for lam in rows)
    if class_label(current, e) != classes[0]:
        raise ReductionError(
            f"chain starts at {classes[0]} but the rows lie in {class_label(current, e)}"
        )
    steps: list[ChainStep] = []
    for target in classes[1:]:
        step = next((s for s in _moves(current, e) if s.target_class == target), None)
        if step is None:
            raise ReductionError(
                f"no restriction or Scopes move from {class_label(current, e)} to {target}",
                details={"rows": [str(lam) for lam in current]},
            )
        steps.append(step)
        current = step.after
    return steps


def find_chain(
    rows: Sequence[Partition],
    goal: Sequence[Partition],
    e: int,
    depth: int | None = None,
) -> list[ChainStep] | None:
    """Shortest chain carrying ``rows`` onto the set ``goal``, if any."""
    if depth is None:
        depth = get_settings().chain_search_depth
    start: Rows = tuple(Partition(lam) for lam in rows)
    target = frozenset(Partition(lam) for lam in goal)
    goal_size = sum(next(iter(target)))
    queue: deque[tuple[Rows, list[ChainStep]]] = deque([(start, [])])
    seen = {start}
    while queue:
        current, path = queue.popleft()
        if frozenset(current) == target:
            logger.debug("Chain found", steps=len(path), goal=sorted(str(g) for g in goal))
            return path
        if len(path) >= depth or sum(current[0]) <= goal_size:
            continue
        for step in _moves(current, e):
            if step.after not in seen and sum(step.after[0]) >= goal_size:
                seen.add(step.after)
                queue.append((step.after, [*path, step]))
    return None


@dataclass
class ChainPlan:
    """Rows reached from the Rouquier rows along a recorded chain."""

    target_class: str
    steps: list[ChainStep] = field(default_factory=list)

    @property
    def rows(self) -> Rows:
        return self.steps[-1].after


def recorded_chain(rouquier_rows: Sequence[Partition], target: ScopesClass | str) -> ChainPlan:
    """
    Raises:
        KeyError: if no chain is recorded for ``target``
        ReductionError: if a recorded move cannot be realized
    """
    label = str(target)
    steps = follow_chain(rouquier_rows, CHAIN_CLASSES[label], 3)
    return ChainPlan(target_class=label, steps=steps)

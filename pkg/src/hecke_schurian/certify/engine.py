"""
Characteristic-p closure of a matched row set.

Given rows whose characteristic-0 submatrix already equals a target, decide
how their characteristic-p entries are pinned down:

- characteristic 0 needs nothing further;
- the e = 3 weight-4 Rouquier class is settled by the in-block rules alone;
- the three chain classes import bounds from the Rouquier rows along a
  restriction/Scopes chain;
- weight 2 (and weight 3 for odd p) rely on named external results, which are
  recorded as assumptions;
- anything else is first reduced by common row/column removal.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from ..algebra.charp import RESTRICTION_ANCHOR, SCOPES_ANCHOR, CharpDeduction
from ..algebra.column_cache import ColumnCache
from ..algebra.laurent import LaurentPoly
from ..config import get_logger
from ..core.abacus import BlockId
from ..core.partitions import Partition
from ..core.scopes import ScopesClass, is_rouquier, normalize_class
from ..utils.error_handling import ReductionError
from .chains import CHAIN_CLASSES, ChainStep, find_chain, recorded_chain
from .reductions import ReducedRows, ReductionStep, normalize_rows, reduce_common
from .table import ROUQUIER_FOUR

logger = get_logger(__name__)

AS22_ANCHOR = "as22, Section 4"
FAYWT2_ANCHOR = "faywt2, Corollary 2.4"
FAYTAN06_ANCHOR = "faytan06"

ROUQUIER_CLASS = "[1,4,7]"
# e = 3 weight-2 classes where the characteristic-2 extension results do not
# give the decomposition numbers
FAYWT2_EXCLUDED = frozenset({"[1,1,2]", "[1,2,3]"})


@dataclass
class Closure:
    """Outcome of the closure policy for one row set."""

    route: str
    deduction: CharpDeduction | None = None
    steps: list[ReductionStep] = field(default_factory=list)
    chain: list[ChainStep] = field(default_factory=list)
    diagnostic: str | None = None

    @property
    def certified(self) -> bool:
        return self.deduction is not None and self.deduction.certified()

    @property
    def assumptions(self) -> list[str]:
        return list(self.deduction.assumptions) if self.deduction else []

    def evidence(self) -> dict[str, Any]:
        matrix = self.deduction.matrix() if self.deduction else []
        return {
            "route": self.route,
            "matrix": [[k.to_dict() for k in row] for row in matrix],
            "chain": [s.to_dict() for s in self.chain],
        }


def rouquier_rows() -> list[Partition]:
    """The four weight-4 rows of the e = 3 Rouquier class, in template order."""
    block = ScopesClass.parse(ROUQUIER_CLASS, 4).block()
    return ROUQUIER_FOUR.partitions(block.core, 4, 3)


def weight_two_anchor(e: int, p: int, normalized: str) -> str | None:
    """External result fixing weight-2 entries in characteristic ``p``, if any."""
    if p % 2 == 1:
        return AS22_ANCHOR
    if p == 2 and not (e == 3 and normalized in FAYWT2_EXCLUDED):
        return FAYWT2_ANCHOR
    return None


def propagate_step(
    previous: CharpDeduction,
    step: ChainStep,
    p: int,
    cache: ColumnCache | None = None,
    rows: Sequence[Partition] | None = None,
) -> CharpDeduction:
    """Carry bounds across one chain move into the next block."""
    rows = list(rows) if rows is not None else list(step.after)
    preimage = dict(zip(step.after, step.before, strict=True))
    block = BlockId.of(rows[0], previous.e)
    deduction = CharpDeduction(block, rows, p, cache=cache)
    for lam in rows:
        for mu in rows:
            known = previous.entry(preimage[lam], preimage[mu])
            if step.kind == "restriction":
                deduction.import_bounds(
                    lam, mu, None, known.upper, "restriction_upper", RESTRICTION_ANCHOR,
                    i=step.i, k=step.parameter,
                )
            else:
                deduction.import_bounds(
                    lam, mu, known.lower, known.upper, "scopes_transport", SCOPES_ANCHOR,
                    i=step.i, r=step.parameter,
                )
    deduction.run()
    return deduction


def propagate_chain(
    source: CharpDeduction,
    steps: Sequence[ChainStep],
    p: int,
    cache: ColumnCache | None = None,
    rows: Sequence[Partition] | None = None,
) -> CharpDeduction:
    """Propagate along every step; ``rows`` fixes the order of the final block."""
    current = source
    for n, step in enumerate(steps):
        last = n == len(steps) - 1
        current = propagate_step(current, step, p, cache, rows if last else None)
    return current


def _close_by_chain(
    reduced: ReducedRows, label: str, p: int, cache: ColumnCache | None
) -> Closure | None:
    start = rouquier_rows()
    steps: list[ChainStep] | None = None
    try:
        plan = recorded_chain(start, label)
        if set(plan.rows) == set(reduced.rows):
            steps = plan.steps
    except ReductionError as exc:
        logger.warning("Recorded chain could not be realized", target=label, error=str(exc))
    if steps is None:
        steps = find_chain(start, reduced.rows, reduced.e)
    if not steps:
        return None
    source_block = BlockId.of(start[0], 3)
    source = CharpDeduction(source_block, start, p, cache=cache)
    source.run()
    if not source.certified():
        return None
    deduction = propagate_chain(source, steps, p, cache, rows=reduced.rows)
    return Closure(route="chain", deduction=deduction, chain=list(steps))


def close(
    reduced: ReducedRows,
    p: int,
    cache: ColumnCache | None = None,
    char0: Sequence[Sequence[LaurentPoly]] | None = None,
) -> Closure:
    """Apply the closure policy to ``reduced`` (rows already in target order)."""
    e, w = reduced.e, reduced.weight
    block = reduced.block
    normalized = str(normalize_class(block))

    def deduction() -> CharpDeduction:
        d = CharpDeduction(block, reduced.rows, p, cache=cache, char0=char0)
        d.run()
        return d

    if p == 0:
        return Closure(route="characteristic_zero", deduction=deduction())

    if e == 3 and p == 2 and w == 4:
        if normalized == ROUQUIER_CLASS and is_rouquier(block):
            d = deduction()
            if d.certified():
                return Closure(route="rouquier", deduction=d)
        if normalized in CHAIN_CLASSES:
            closure = _close_by_chain(reduced, normalized, p, cache)
            if closure is not None and closure.certified:
                return closure

    if w == 2:
        anchor = weight_two_anchor(e, p, normalized)
        if anchor is not None:
            d = deduction()
            d.close_with_axiom(anchor)
            return Closure(route="weight_two", deduction=d)

    smaller = normalize_rows(reduce_common(reduced))
    if smaller.weight < w:
        inner = close(smaller, p, cache)
        if inner.certified:
            inner.steps = smaller.steps[len(reduced.steps):] + inner.steps
            return inner

    if w == 3 and p % 2 == 1:
        d = deduction()
        d.close_with_axiom(FAYTAN06_ANCHOR)
        return Closure(route="weight_three", deduction=d)

    return Closure(
        route="none",
        diagnostic=f"no characteristic-{p} closure for class {normalized} at weight {w}",
    )

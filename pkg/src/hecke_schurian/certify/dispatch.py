"""
Case dispatch: pick the witness partitions for a block.

Weight ≥ 4 blocks use the table rows (except for e = 3, p = 2). Weight 2
uses the two-runner construction when it applies and otherwise lifts the
core to weight 4, takes a table row there and removes the padding row.
Weight 3 uses the fixed e = 3 construction or a search over the block. The
e = 3, p = 2 case works on normalized Scopes classes, redirecting to the
conjugate class where that class is easier.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

from ..algebra.column_cache import ColumnCache
from ..algebra.fock import llt_column
from ..algebra.laurent import LaurentPoly
from ..config import get_logger
from ..core.abacus import (
    BlockId,
    beta_numbers,
    block_partitions,
    canonical_bead_count,
    from_beta,
)
from ..core.partitions import Partition, is_e_regular
from ..core.scopes import (
    class_of_block,
    conjugate_class,
    normalize_class,
    scopes_path,
    transport_back,
)
from ..utils.error_handling import (
    QuantumCharacteristicError,
    ReductionError,
    RepresentationFiniteError,
)
from .chains import CHAIN_CLASSES, recorded_chain
from .engine import ROUQUIER_CLASS, rouquier_rows
from .reductions import remove_first_row
from .table import (
    PAD_TO_FOUR,
    PAD_TO_THREE,
    ROUQUIER_FOUR,
    TWO_RUNNER_NARROW,
    TWO_RUNNER_WIDE,
    WEIGHT_THREE,
    Construction,
    DiffProfile,
    select_row,
)
from .targets import DAGGER, DDAGGER, SPADE, TargetMatrix

logger = get_logger(__name__)

WEIGHT_THREE_CLASSES = frozenset({"[1,3,4]", "[1,2,3]"})
# e = 3, p = 2, weight 4 classes whose conjugate class has a direct witness
CONJUGATE_REDIRECTS = frozenset({"[1,1,3]", "[1,1,4]", "[1,2,4]", "[1,2,5]", "[1,4,1]"})
SPECIAL_CLASSES = CONJUGATE_REDIRECTS | set(CHAIN_CLASSES) | {ROUQUIER_CLASS}


@dataclass
class Plan:
    """Witness partitions chosen for a block, before any reduction."""

    route: str
    block: BlockId
    construction: Construction | None = None
    source: list[Partition] = field(default_factory=list)
    removals: tuple[str, ...] = ()
    redirect: str | None = None
    notes: dict[str, Any] = field(default_factory=dict)
    diagnostic: str | None = None

    @property
    def target(self) -> TargetMatrix | None:
        return self.construction.target if self.construction else None

    def witness(self) -> dict[str, Any]:
        return {
            "construction": self.construction.name if self.construction else None,
            "citation": self.construction.citation if self.construction else None,
            "block": {"core": str(self.block.core), "weight": self.block.weight},
            "class": str(normalize_class(self.block)),
            "redirect": self.redirect,
            "removals": list(self.removals),
            **self.notes,
        }


def lift_core(core: Partition, e: int) -> Partition:
    """Add a bead one level below the lowest bead of the core display."""
    beads = beta_numbers(core, canonical_bead_count(core, e))
    return from_beta((*beads, max(beads) + e))


def _on_normalized(
    block: BlockId, build: Callable[[BlockId], Plan | None]
) -> Plan | None:
    """Build a plan on the normalized block and carry its rows back to ``block``."""
    normalized = normalize_class(block).block()
    plan = build(normalized)
    if plan is None or plan.block != normalized or normalized == block:
        return plan
    path = scopes_path(block)
    plan.source = [transport_back(lam, block.e, path) for lam in plan.source]
    plan.block = block
    return plan


def _construction_plan(
    route: str, block: BlockId, construction: Construction, weight: int | None = None
) -> Plan:
    w = block.weight if weight is None else weight
    return Plan(
        route=route,
        block=block,
        construction=construction,
        source=construction.partitions(block.core, w, block.e),
        removals=construction.removals,
        notes={"templates": list(construction.templates)},
    )


def _table_plan(block: BlockId, p: int) -> Plan | None:
    row = select_row(DiffProfile.of_core(block.core, block.e), p)
    if row is None:
        return None
    plan = _construction_plan(row.name, block, row)
    plan.notes["profile"] = DiffProfile.of_core(block.core, block.e).to_dict()
    return plan


def _weight_two_plan(block: BlockId, p: int) -> Plan | None:
    e = block.e
    profile = DiffProfile.of_core(block.core, e)
    if e >= 4 and profile.d1 > e:
        construction = TWO_RUNNER_NARROW if profile.d2 < e else TWO_RUNNER_WIDE
        return _construction_plan(construction.name, block, construction)
    lifted = lift_core(block.core, e)
    lifted_profile = DiffProfile.of_core(lifted, e)
    row = select_row(lifted_profile, p)
    if row is None:
        return None
    try:
        source = remove_first_row(row.partitions(lifted, 4, e))
    except ReductionError:
        return None
    return Plan(
        route=f"lift:{row.name}",
        block=block,
        construction=row,
        source=source,
        notes={
            "templates": list(row.templates),
            "lifted_core": str(lifted),
            "profile": lifted_profile.to_dict(),
        },
    )


DecompLookup = Callable[[Partition, Partition], LaurentPoly]


def _backtrack(
    candidates: Sequence[Partition], target: TargetMatrix, d: DecompLookup
) -> list[Partition] | None:
    chosen: list[Partition] = []

    def extend() -> bool:
        k = len(chosen)
        if k == target.size:
            return True
        for c in candidates:
            if c in chosen:
                continue
            if all(
                d(c, chosen[j]) == target.entries[k][j]
                and d(chosen[j], c) == target.entries[j][k]
                for j in range(k)
            ):
                chosen.append(c)
                if extend():
                    return True
                chosen.pop()
        return False

    return list(chosen) if extend() else None


def search_witness(
    block: BlockId,
    cache: ColumnCache | None = None,
    reducible_only: bool = False,
    targets: Sequence[TargetMatrix] = (DAGGER, DDAGGER, SPADE),
) -> tuple[list[Partition], TargetMatrix] | None:
    """
    Search the e-regular partitions of ``block`` for a target submatrix.

    Sets sharing a first part or a length come first, since they reduce to a
    smaller weight; ``reducible_only`` searches nothing else.
    """
    e = block.e
    regular = [lam for lam in block_partitions(block) if is_e_regular(lam, e)]
    by_first: dict[int, list[Partition]] = defaultdict(list)
    by_length: dict[int, list[Partition]] = defaultdict(list)
    for lam in regular:
        by_first[lam.part(1)].append(lam)
        by_length[len(lam)].append(lam)
    groups = [g for g in (*by_first.values(), *by_length.values()) if len(g) >= 4]
    if not reducible_only:
        groups.append(regular)

    def d(lam: Partition, mu: Partition) -> LaurentPoly:
        return llt_column(mu, e, cache=cache).coefficient(lam)

    for group in groups:
        for target in targets:
            found = _backtrack(group, target, d)
            if found is not None:
                logger.debug("Witness found by search", block=str(block), target=target.name.value)
                return found, target
    return None


def _weight_three_plan(
    block: BlockId, p: int, cache: ColumnCache | None, redirect: Callable[[], Plan]
) -> Plan | None:
    if block.e == 3:
        label = str(normalize_class(block))
        if label in WEIGHT_THREE_CLASSES:
            return _on_normalized(
                block, lambda b: _construction_plan(WEIGHT_THREE.name, b, WEIGHT_THREE)
            )
        if label == "[1,2,4]":
            return redirect()
    found = search_witness(block, cache=cache, reducible_only=p == 2)
    if found is None:
        return None
    rows, target = found
    construction = Construction(
        name="search", templates=(), target=target, citation="LLT search"
    )
    return Plan(route="search", block=block, construction=construction, source=rows)


def _three_two_plan(
    block: BlockId, cache: ColumnCache | None, redirect: Callable[[], Plan]
) -> Plan | None:
    """e = 3, p = 2."""
    w = block.weight
    normalized = normalize_class(block)
    label = str(normalized)

    if w == 2:
        if label == "[1,2,3]":
            return None
        if label == "[1,1,2]":
            return redirect()
        return _on_normalized(block, lambda b: _weight_two_plan(b, 2)) or redirect()

    if w == 3:
        return _weight_three_plan(block, 2, cache, redirect)

    if w == 4:
        if label == ROUQUIER_CLASS:
            return _on_normalized(
                block, lambda b: _construction_plan("rouquier", b, ROUQUIER_FOUR)
            )
        if label in CHAIN_CLASSES:
            return _on_normalized(block, lambda b: _chain_plan(b, label))
        if label in CONJUGATE_REDIRECTS:
            return redirect()
        return _on_normalized(block, lambda b: _table_plan(b, 2)) or redirect()

    s1, s2 = normalized.counts[1], normalized.counts[2]
    if s1 <= s2:
        gap, limit, table_up_to = s2 - s1, s1 - 1, 1
    else:
        gap, limit, table_up_to = s1 - s2, s2, 2
    # the conjugate class has the smaller gap
    if gap > limit:
        return redirect()
    if gap <= table_up_to:
        plan = _on_normalized(block, lambda b: _table_plan(b, 2))
    else:
        pad = PAD_TO_THREE if gap == table_up_to + 1 else PAD_TO_FOUR
        plan = _on_normalized(block, lambda b: _construction_plan(pad.name, b, pad))
    return plan or redirect()


def _chain_plan(block: BlockId, label: str) -> Plan | None:
    try:
        chain = recorded_chain(rouquier_rows(), label)
    except ReductionError as exc:
        logger.warning("Recorded chain could not be realized", target=label, error=exc.message)
        return None
    construction = Construction(
        name=f"chain{label}",
        templates=(),
        target=DDAGGER,
        citation="restriction and Scopes chain from [1,4,7]",
    )
    return Plan(
        route="chain",
        block=block,
        construction=construction,
        source=list(chain.rows),
        notes={"chain_classes": list(CHAIN_CLASSES[label])},
    )


def dispatch(
    e: int,
    p: int,
    block: BlockId,
    cache: ColumnCache | None = None,
    redirected: bool = False,
) -> Plan:
    """
    Choose witness partitions for ``block``.

    A plan without a construction carries a diagnostic and leads to an
    INCONCLUSIVE certificate.

    Raises:
        QuantumCharacteristicError: if e < 3
        RepresentationFiniteError: if the weight is below 2
    """
    if e < 3:
        raise QuantumCharacteristicError(e)
    if block.e != e:
        raise QuantumCharacteristicError(block.e)
    if block.weight < 2:
        raise RepresentationFiniteError(block.weight)

    def redirect() -> Plan:
        if redirected:
            return Plan(
                route="none",
                block=block,
                diagnostic=f"class {normalize_class(block)} redirects back to its conjugate",
            )
        conjugate = conjugate_class(normalize_class(block)).block()
        plan = dispatch(e, p, conjugate, cache=cache, redirected=True)
        plan.redirect = "conjugate"
        plan.route = f"conjugate:{plan.route}"
        logger.debug(
            "Redirected to conjugate class",
            source=str(class_of_block(block)),
            conjugate=str(class_of_block(conjugate)),
        )
        return plan

    w = block.weight
    if e == 3 and p == 2:
        plan = _three_two_plan(block, cache, redirect)
    elif w == 2:
        plan = _weight_two_plan(block, p) or redirect()
    elif w == 3:
        plan = _weight_three_plan(block, p, cache, redirect)
    else:
        plan = _table_plan(block, p) or redirect()

    if plan is None:
        return Plan(
            route="none",
            block=block,
            diagnostic=(
                f"no witness construction for class {normalize_class(block)} "
                f"at weight {w} with e={e}, p={p}"
            ),
        )
    outside = [lam for lam in plan.source if not plan.block.contains(lam)]
    if outside:
        return Plan(
            route=plan.route,
            block=plan.block,
            diagnostic=f"witness partitions outside {plan.block}: {', '.join(map(str, outside))}",
        )
    return plan

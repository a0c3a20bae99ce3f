"""
Characteristic-p deductions.

The engine never computes adjustment matrices. It keeps, for each pair
(λ, μ), bounds lower ≤ d^{e,p}_{λμ}(1) ≤ upper and tightens them to a fixed
point from:

- unitriangularity and dominance,
- positivity of the adjustment matrix (char-0 values are lower bounds),
- the Rouquier quotient-size constraint on adjustment entries,
- Jantzen vanishing.

Restriction and Scopes transport between blocks, and named external facts,
enter through :meth:`CharpDeduction.import_bounds` and
:meth:`CharpDeduction.close_with_axiom`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from ..config import LoggerMixin, get_logger
from ..core.abacus import BlockId, block_partitions, core_and_weight, quotient_sizes
from ..core.partitions import (
    Partition,
    boundary_nodes,
    dominates,
    is_e_regular,
    parse_partition,
    strictly_dominates,
)
from ..core.scopes import is_rouquier
from ..utils.error_handling import (
    BlockMismatchError,
    DeductionInconsistencyError,
    NotERegularError,
    NotRouquierError,
    RestrictionError,
)
from .column_cache import ColumnCache
from .fock import llt_column
from .jantzen import jantzen_zero_deduction
from .laurent import LaurentPoly

logger = get_logger(__name__)

ADJUSTMENT_ANCHOR = "bk09, Theorem 5.17"
ROUQUIER_ANCHOR = "jlm, Proposition 4.4"
JANTZEN_ANCHOR = "Mathas, Section 5.2"
RESTRICTION_ANCHOR = "Mathas, Section 6.1"
SCOPES_ANCHOR = "Scopes equivalence"
LLT_ANCHOR = "LLT algorithm"

Pair = tuple[Partition, Partition]


@dataclass(frozen=True)
class DeductionStep:
    """One rule application that moved a bound."""

    rule: str
    anchor: str
    lower: int
    upper: int | None
    inputs: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "anchor": self.anchor,
            "inputs": self.inputs,
            "lower": self.lower,
            "upper": self.upper,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> DeductionStep:
        return cls(
            rule=data["rule"],
            anchor=data["anchor"],
            lower=data["lower"],
            upper=data["upper"],
            inputs=dict(data.get("inputs", {})),
        )


@dataclass
class EntryKnowledge:
    """Bounds on d^{e,p}_{λμ}(1); ``upper=None`` means unbounded."""

    lower: int = 0
    upper: int | None = None
    provenance: list[DeductionStep] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.certified else None

    def raise_lower(self, value: int, rule: str, anchor: str, **inputs: Any) -> bool:
        if value <= self.lower:
            return False
        self.lower = value
        self._record(rule, anchor, inputs)
        return True

    def lower_upper(self, value: int, rule: str, anchor: str, **inputs: Any) -> bool:
        if self.upper is not None and value >= self.upper:
            return False
        self.upper = value
        self._record(rule, anchor, inputs)
        return True

    def _record(self, rule: str, anchor: str, inputs: dict[str, Any]) -> None:
        self.provenance.append(DeductionStep(rule, anchor, self.lower, self.upper, inputs))
        if self.upper is not None and self.lower > self.upper:
            raise DeductionInconsistencyError(
                f"lower bound {self.lower} exceeds upper bound {self.upper} after {rule}",
                details={"provenance": [s.to_dict() for s in self.provenance]},
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "provenance": [s.to_dict() for s in self.provenance],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EntryKnowledge:
        return cls(
            lower=data["lower"],
            upper=data["upper"],
            provenance=[DeductionStep.from_dict(s) for s in data.get("provenance", [])],
        )


def adjustment_lower_bound(
    char0: Sequence[Sequence[LaurentPoly]],
) -> list[list[EntryKnowledge]]:
    """
    Lower bounds d^{e,p}_{λμ}(1) ≥ d^{e,0}_{λμ}(1) for a square submatrix
    whose rows and columns are indexed by the same partitions.
    """
    matrix: list[list[EntryKnowledge]] = []
    for i, row in enumerate(char0):
        knowledge_row = []
        for j, entry in enumerate(row):
            k = EntryKnowledge()
            if i == j:
                k.raise_lower(1, "unitriangular", ADJUSTMENT_ANCHOR)
                k.lower_upper(1, "unitriangular", ADJUSTMENT_ANCHOR)
            else:
                k.raise_lower(entry.at_one(), "adjustment_lower", ADJUSTMENT_ANCHOR)
            knowledge_row.append(k)
        matrix.append(knowledge_row)
    return matrix


def surviving_adjustments(
    block: BlockId,
    lam: Partition,
    mu: Partition,
    cache: ColumnCache | None = None,
) -> list[Partition]:
    """
    e-regular ν with λ ⊴ ν ◁ μ, d^{e,0}_{λν} ≠ 0 and the quotient sizes of μ:
    the only ν whose adjustment entry a_{νμ} can contribute to d_{λμ} in a
    Rouquier block.
    """
    sizes = quotient_sizes(mu, block.e)
    survivors = []
    for nu in block_partitions(block):
        if not is_e_regular(nu, block.e) or quotient_sizes(nu, block.e) != sizes:
            continue
        if not (dominates(nu, lam) and strictly_dominates(mu, nu)):
            continue
        if llt_column(nu, block.e, cache=cache).coefficient(lam):
            survivors.append(nu)
    return survivors


def rouquier_constraint(
    block: BlockId,
    lam: Partition,
    mu: Partition,
    cache: ColumnCache | None = None,
) -> bool:
    """
    True iff no adjustment term can contribute to (λ, μ), so that
    d^{e,p}_{λμ}(v) = d^{e,0}_{λμ}(v).

    Raises:
        NotRouquierError: if the block is not Rouquier
    """
    if not is_rouquier(block):
        raise NotRouquierError(f"block {block} is not Rouquier")
    return not surviving_adjustments(block, Partition(lam), Partition(mu), cache)


@dataclass(frozen=True)
class RestrictionBound:
    """d^{e,p}_{λμ}(1) ≥ d^{e,p}_{λ̄μ̄}(1) after removing k i-nodes."""

    lam: Partition
    mu: Partition
    lam_bar: Partition
    mu_bar: Partition
    i: int
    k: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "lambda_bar": str(self.lam_bar),
            "mu_bar": str(self.mu_bar),
            "i": self.i,
            "k": self.k,
        }


def remove_residue_nodes(partition: Partition, e: int, i: int) -> Partition:
    """Remove every removable i-node (they are pairwise non-adjacent)."""
    _, removable = boundary_nodes(partition, e, i)
    parts = list(partition)
    for node in removable:
        parts[node.row - 1] -= 1
    return Partition(parts)


def restriction_bound(
    lam: Partition, mu: Partition, i: int, k: int, e: int
) -> RestrictionBound:
    """
    Check the hypotheses of the i-restriction inequality and return it.

    Raises:
        RestrictionError: naming the first node count that is not k
        NotERegularError: if μ is not e-regular
    """
    lam, mu = Partition(lam), Partition(mu)
    if not is_e_regular(mu, e):
        raise NotERegularError(mu, e)
    if k == 0:
        return RestrictionBound(lam, mu, lam, mu, i, 0)
    for name, partition in (("lambda", lam), ("mu", mu)):
        count = len(boundary_nodes(partition, e, i)[1])
        if count != k:
            raise RestrictionError(
                f"{name}={partition} has {count} removable {i}-nodes, expected {k}",
                details={"count": "removable", "partition": str(partition)},
            )
    lam_bar = remove_residue_nodes(lam, e, i)
    mu_bar = remove_residue_nodes(mu, e, i)
    for name, partition in (("lambda_bar", lam_bar), ("mu_bar", mu_bar)):
        count = len(boundary_nodes(partition, e, i)[0])
        if count != k:
            raise RestrictionError(
                f"{name}={partition} has {count} addable {i}-nodes, expected {k}",
                details={"count": "addable", "partition": str(partition)},
            )
    if not is_e_regular(mu_bar, e):
        raise RestrictionError(f"mu_bar={mu_bar} is not {e}-regular")
    return RestrictionBound(lam, mu, lam_bar, mu_bar, i, k)


class CharpDeduction(LoggerMixin):
    """Fixed-point bound propagation for a square submatrix in one block."""

    def __init__(
        self,
        block: BlockId,
        rows: Iterable[Partition],
        p: int,
        cache: ColumnCache | None = None,
        char0: Sequence[Sequence[LaurentPoly]] | None = None,
    ):
        self.block = block
        self.e = block.e
        self.p = p
        self.cache = cache
        self.rows = [Partition(r) for r in rows]
        for lam in self.rows:
            if core_and_weight(lam, self.e) != (block.core, block.weight):
                raise BlockMismatchError(f"{lam} does not lie in {block}")
            if not is_e_regular(lam, self.e):
                raise NotERegularError(lam, self.e)
        self._char0: dict[Pair, LaurentPoly] = {}
        if char0 is not None:
            for i, lam in enumerate(self.rows):
                for j, mu in enumerate(self.rows):
                    self._char0[(lam, mu)] = char0[i][j]
        self.rouquier = p > 0 and block.weight > 0 and is_rouquier(block)
        self.knowledge: dict[Pair, EntryKnowledge] = {}
        self.assumptions: list[str] = []
        for lam in self.rows:
            for mu in self.rows:
                self.entry(lam, mu)

    def char0(self, lam: Partition, mu: Partition) -> LaurentPoly:
        key = (lam, mu)
        if key not in self._char0:
            column = llt_column(mu, self.e, cache=self.cache)
            self._char0[key] = column.coefficient(lam)
        return self._char0[key]

    def entry(self, lam: Partition, mu: Partition) -> EntryKnowledge:
        """Knowledge for (λ, μ), seeded with the rules that need no search."""
        key = (lam, mu)
        known = self.knowledge.get(key)
        if known is not None:
            return known
        known = self.knowledge[key] = EntryKnowledge()
        if lam == mu:
            known.raise_lower(1, "unitriangular", ADJUSTMENT_ANCHOR)
            known.lower_upper(1, "unitriangular", ADJUSTMENT_ANCHOR)
        elif not dominates(mu, lam):
            known.lower_upper(0, "dominance", ADJUSTMENT_ANCHOR)
        else:
            value = self.char0(lam, mu).at_one()
            known.raise_lower(value, "adjustment_lower", ADJUSTMENT_ANCHOR)
            if self.p == 0:
                known.lower_upper(value, "characteristic_zero", LLT_ANCHOR)
        return known

    def _adjustment_upper(self, lam: Partition, mu: Partition) -> bool:
        known = self.entry(lam, mu)
        if known.certified or lam == mu or not dominates(mu, lam):
            return False
        survivors = surviving_adjustments(self.block, lam, mu, self.cache)
        total = self.char0(lam, mu).at_one()
        for nu in survivors:
            side = self.entry(nu, mu)
            if side.upper is None:
                return False
            slack = side.upper - self.char0(nu, mu).at_one()
            total += self.char0(lam, nu).at_one() * max(slack, 0)
        return known.lower_upper(
            total,
            "rouquier_adjustment",
            ROUQUIER_ANCHOR,
            survivors=[str(nu) for nu in survivors],
        )

    def _jantzen(self, lam: Partition, mu: Partition) -> bool:
        known = self.entry(lam, mu)
        if known.upper == 0 or lam == mu or not dominates(mu, lam):
            return False

        def upper(sigma: Partition) -> int | None:
            side = self.knowledge.get((sigma, mu))
            return side.upper if side is not None else None

        token = jantzen_zero_deduction(lam, mu, self.e, self.p, upper=upper)
        if token is None:
            return False
        return known.lower_upper(
            0,
            "jantzen_zero",
            JANTZEN_ANCHOR,
            interval=[str(s) for s in token.interval],
        )

    def run(self) -> list[list[EntryKnowledge]]:
        """Apply the in-block rules until no bound moves."""
        if self.p > 0:
            passes = 0
            changed = True
            while changed:
                changed = False
                passes += 1
                for lam, mu in sorted(self.knowledge, reverse=True):
                    if self.knowledge[(lam, mu)].certified:
                        continue
                    if self.rouquier and self._adjustment_upper(lam, mu):
                        changed = True
                    if self._jantzen(lam, mu):
                        changed = True
                if passes > 2 * len(self.knowledge) + 2:
                    raise DeductionInconsistencyError("bound propagation did not settle")
            self.logger.debug(
                "Char-p deduction settled",
                block=str(self.block),
                p=self.p,
                passes=passes,
                tracked=len(self.knowledge),
            )
        return self.matrix()

    def import_bounds(
        self,
        lam: Partition,
        mu: Partition,
        lower: int | None,
        upper: int | None,
        rule: str,
        anchor: str,
        **inputs: Any,
    ) -> bool:
        """Apply bounds carried over from another block."""
        known = self.entry(lam, mu)
        changed = False
        if lower is not None:
            changed |= known.raise_lower(lower, rule, anchor, **inputs)
        if upper is not None:
            changed |= known.lower_upper(upper, rule, anchor, **inputs)
        return changed

    def close_with_axiom(self, anchor: str) -> int:
        """
        Close open submatrix entries by an external fact asserting
        d^{e,p} = d^{e,0} on them; returns how many entries moved.
        """
        closed = 0
        for lam in self.rows:
            for mu in self.rows:
                known = self.entry(lam, mu)
                if known.certified:
                    continue
                value = self.char0(lam, mu).at_one()
                known.raise_lower(value, "axiom", anchor)
                known.lower_upper(value, "axiom", anchor)
                closed += 1
        if closed and anchor not in self.assumptions:
            self.assumptions.append(anchor)
        return closed

    def matrix(self) -> list[list[EntryKnowledge]]:
        return [[self.knowledge[(lam, mu)] for mu in self.rows] for lam in self.rows]

    def certified(self) -> bool:
        return all(k.certified for row in self.matrix() for k in row)


def deduce_charp_submatrix(
    block: BlockId,
    rows: Sequence[Partition | str],
    p: int,
    cache: ColumnCache | None = None,
    char0: Sequence[Sequence[LaurentPoly]] | None = None,
) -> list[list[EntryKnowledge]]:
    """
    Bounds on d^{e,p}_{λμ}(1) for λ, μ in ``rows`` from the in-block rules.

    Raises:
        DeductionInconsistencyError: if a lower bound ever exceeds an upper one
    """
    partitions = [parse_partition(r) if isinstance(r, str) else Partition(r) for r in rows]
    return CharpDeduction(block, partitions, p, cache=cache, char0=char0).run()

"""
Level-one Fock space and the LLT algorithm.

f_i adds an i-node A to λ with weight v^{N_A}, where N_A counts addable
minus removable i-nodes on one side of A. The side is a setting; "above"
(smaller row index) is the one for which the self-test reproduces the known
weight-2 submatrix, and "below" is kept for comparison.

G(μ) is obtained from the ladder vector A(μ) by subtracting bar-invariant
multiples of G(ν) for dominance-maximal ν whose coefficient has a term of
non-positive degree, until every off-diagonal coefficient lies in vℕ[v].
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from functools import lru_cache
from itertools import combinations
from typing import Literal

from ..config import get_logger, get_settings, timed
from ..core.abacus import BlockId, block_partitions, core_and_weight
from ..core.partitions import (
    EMPTY,
    Node,
    Partition,
    addable_nodes,
    is_e_regular,
    removable_nodes,
    strictly_dominates,
)
from ..utils.error_handling import BlockMismatchError, ConventionError, NotERegularError
from .column_cache import ColumnCache, column_problems, get_column_cache
from .laurent import ONE, ZERO, LaurentPoly, quantum_factorial

logger = get_logger(__name__)

TieBreak = Literal["lex", "reverse"]


class FockVector:
    """Finitely supported map from partitions to non-zero Laurent polynomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Partition, LaurentPoly] | None = None):
        self._terms = {lam: c for lam, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, partition: Partition) -> FockVector:
        return cls({partition: ONE})

    @property
    def terms(self) -> dict[Partition, LaurentPoly]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Partition, LaurentPoly]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def support(self) -> list[Partition]:
        return sorted(self._terms, reverse=True)

    def coefficient(self, partition: Partition) -> LaurentPoly:
        return self._terms.get(partition, ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: FockVector) -> FockVector:
        merged = dict(self._terms)
        for lam, c in other._terms.items():
            merged[lam] = merged.get(lam, ZERO) + c
        return FockVector(merged)

    def __sub__(self, other: FockVector) -> FockVector:
        return self + other.scale(LaurentPoly.constant(-1))

    def scale(self, factor: LaurentPoly) -> FockVector:
        return FockVector({lam: factor * c for lam, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})·({lam})" for lam, c in self.items())
        return f"FockVector({body or '0'})"


@lru_cache(maxsize=500_000)
def _residue_boundary(
    partition: Partition, e: int, i: int
) -> tuple[tuple[Node, ...], tuple[Node, ...]]:
    addable = tuple(n for n in addable_nodes(partition) if n.residue(e) == i)
    removable = tuple(n for n in removable_nodes(partition) if n.residue(e) == i)
    return addable, removable


def _add_nodes(partition: Partition, nodes: Iterable[Node]) -> Partition:
    parts = list(partition)
    for node in nodes:
        if node.row > len(parts):
            parts.append(0)
        parts[node.row - 1] += 1
    return Partition.trusted(tuple(parts))


def _resolve_convention(convention: str | None) -> str:
    value = convention or get_settings().llt_convention
    if value not in ("above", "below"):
        raise ConventionError(f"unknown f_i convention {value!r}")
    return value


def _divided_terms(
    partition: Partition, e: int, i: int, k: int, convention: str
) -> list[tuple[Partition, int]]:
    """(λ ∪ S, N(S)) over k-subsets S of the addable i-nodes of λ."""
    addable, removable = _residue_boundary(partition, e, i)
    if k > len(addable):
        return []
    counted_side = (
        (lambda other, node: other.row < node.row)
        if convention == "above"
        else (lambda other, node: other.row > node.row)
    )
    result = []
    for subset in combinations(addable, k):
        chosen = set(subset)
        exponent = 0
        for node in subset:
            exponent += sum(
                1 for a in addable if a not in chosen and counted_side(a, node)
            )
            exponent -= sum(1 for r in removable if counted_side(r, node))
        result.append((_add_nodes(partition, subset), exponent))
    return result


def f_apply(
    x: FockVector, i: int, e: int, convention: str | None = None
) -> FockVector:
    """The Chevalley generator f_i, extended linearly."""
    return f_divided(x, i, 1, e, convention=convention, verify=False)


def f_power(x: FockVector, i: int, k: int, e: int, convention: str | None = None) -> FockVector:
    """f_i applied k times."""
    for _ in range(k):
        x = f_apply(x, i, e, convention)
    return x


def f_divided(
    x: FockVector,
    i: int,
    k: int,
    e: int,
    convention: str | None = None,
    verify: bool | None = None,
) -> FockVector:
    """
    Divided power f_i^{(k)} via the k-subset rule.

    With ``verify`` the result is checked against f_i^k / [k]!.

    Raises:
        ConventionError: if the divisibility check fails
    """
    convention = _resolve_convention(convention)
    if k == 0:
        return x
    accumulated: dict[Partition, dict[int, int]] = {}
    for lam, coeff in x.terms.items():
        for target, exponent in _divided_terms(lam, e, i, k, convention):
            bucket = accumulated.setdefault(target, {})
            for deg, c in coeff:
                bucket[deg + exponent] = bucket.get(deg + exponent, 0) + c
    result = FockVector({lam: LaurentPoly(poly) for lam, poly in accumulated.items()})

    if verify is None:
        settings = get_settings()
        verify = settings.verify_divided_powers or settings.debug
    if verify and k > 1:
        _check_divided_power(x, i, k, e, convention, result)
    return result


def _check_divided_power(
    x: FockVector, i: int, k: int, e: int, convention: str, divided: FockVector
) -> None:
    factorial = quantum_factorial(k)
    repeated = f_power(x, i, k, e, convention)
    try:
        quotient = FockVector(
            {lam: c.exact_divide(factorial) for lam, c in repeated.terms.items()}
        )
    except ValueError as err:
        raise ConventionError(
            f"f_{i}^{k} is not divisible by [{k}]!", details={"k": k, "i": i}
        ) from err
    if quotient != divided:
        raise ConventionError(
            f"divided power f_{i}^({k}) disagrees with f_{i}^{k}/[{k}]!",
            details={"k": k, "i": i, "convention": convention},
        )


def ladder_sequence(mu: Partition, e: int) -> list[tuple[int, int]]:
    """
    (residue, size) of each non-empty ladder of μ in increasing order.

    Ladder ℓ holds the nodes (r, c) with r + (e−1)(c−1) = ℓ; its residue is
    (1 − ℓ) mod e.
    """
    if not is_e_regular(mu, e):
        raise NotERegularError(mu, e)
    sizes: dict[int, int] = {}
    for node in mu.nodes():
        ladder = node.row + (e - 1) * (node.col - 1)
        sizes[ladder] = sizes.get(ladder, 0) + 1
    return [((1 - ladder) % e, sizes[ladder]) for ladder in sorted(sizes)]


def ladder_vector(
    mu: Partition,
    e: int,
    convention: str | None = None,
    verify: bool | None = None,
) -> FockVector:
    """A(μ): divided powers along the ladders of μ applied to ∅."""
    x = FockVector.basis(EMPTY)
    for residue, multiplicity in ladder_sequence(mu, e):
        x = f_divided(x, residue, multiplicity, e, convention=convention, verify=verify)
    return x


def _pick(bad: list[Partition], tie_break: TieBreak) -> Partition:
    if tie_break == "lex":
        return max(bad)
    maximal = [
        nu for nu in bad if not any(strictly_dominates(other, nu) for other in bad)
    ]
    return min(maximal)


def _compute_column(
    mu: Partition,
    e: int,
    cache: ColumnCache,
    convention: str,
    tie_break: TieBreak,
) -> FockVector:
    x = ladder_vector(mu, e, convention)
    if x.coefficient(mu) != ONE:
        raise ConventionError(
            f"ladder vector of {mu} has coefficient {x.coefficient(mu)} at {mu}",
            details={"convention": convention},
        )
    terms = x.terms
    budget = 10 * len(terms) + 100
    while True:
        bad = [
            nu
            for nu, c in terms.items()
            if nu != mu and (c.min_degree is not None and c.min_degree <= 0)
        ]
        if not bad:
            break
        budget -= 1
        if budget < 0:
            raise ConventionError(f"LLT correction loop for {mu} did not settle")
        nu = _pick(bad, tie_break)
        if not is_e_regular(nu, e):
            raise ConventionError(
                f"correction needed at non-{e}-regular {nu} in the column of {mu}",
                details={"convention": convention},
            )
        factor = terms[nu].bar_invariant_lift()
        lower = llt_column(nu, e, cache=cache, convention=convention, tie_break=tie_break)
        for lam, d in lower.terms.items():
            updated = terms.get(lam, ZERO) - factor * d
            if updated:
                terms[lam] = updated
            else:
                terms.pop(lam, None)
    return FockVector(terms)


def llt_column(
    mu: Partition,
    e: int,
    cache: ColumnCache | None = None,
    convention: str | None = None,
    tie_break: TieBreak = "lex",
) -> FockVector:
    """
    Canonical basis element G(μ) = Σ_λ d_{λμ}(v) λ.

    Raises:
        NotERegularError: if μ is not e-regular
        ConventionError: if the result is not unitriangular with vℕ[v]
            off-diagonal entries inside the block of μ
    """
    mu = Partition(mu)
    if not is_e_regular(mu, e):
        raise NotERegularError(mu, e)
    convention = _resolve_convention(convention)
    cache = cache if cache is not None else get_column_cache()
    key = (e, convention, mu)

    cached = cache.get(key)
    if cached is not None:
        return FockVector(cached)
    with cache.key_lock(key):
        cached = cache.get(key)
        if cached is not None:
            return FockVector(cached)
        with timed("llt_column", threshold=0.5, e=e, mu=str(mu)):
            column = _compute_column(mu, e, cache, convention, tie_break)
        problems = column_problems(key, column.terms)
        if problems:
            raise ConventionError(
                f"column of {mu} failed positivity/unitriangularity",
                details={"problems": problems[:5], "convention": convention},
            )
        cache.publish(key, column.terms)
        return column


def decomp_submatrix(
    rows: Sequence[Partition],
    e: int,
    columns: Sequence[Partition] | None = None,
    cache: ColumnCache | None = None,
    convention: str | None = None,
) -> list[list[LaurentPoly]]:
    """
    Entries d_{rows_i, columns_j}(v) of the characteristic-0 graded matrix.

    Raises:
        BlockMismatchError: if the partitions do not share a block
        NotERegularError: if a column label is not e-regular
    """
    rows = [Partition(r) for r in rows]
    columns = rows if columns is None else [Partition(c) for c in columns]
    blocks = {core_and_weight(p, e) for p in [*rows, *columns]}
    if len(blocks) > 1:
        raise BlockMismatchError(
            "rows lie in different blocks",
            details={"blocks": sorted(f"{core}/{w}" for core, w in blocks)},
        )
    for mu in columns:
        if not is_e_regular(mu, e):
            raise NotERegularError(mu, e)
    cols = [llt_column(mu, e, cache=cache, convention=convention) for mu in columns]
    return [[col.coefficient(lam) for col in cols] for lam in rows]


def decomp_matrix(
    block: BlockId,
    cache: ColumnCache | None = None,
    convention: str | None = None,
) -> tuple[list[Partition], list[Partition], list[list[LaurentPoly]]]:
    """Full graded decomposition matrix of a block: (rows, columns, entries)."""
    rows = list(block_partitions(block))
    columns = [mu for mu in rows if is_e_regular(mu, block.e)]
    if not rows:
        return rows, columns, []
    entries = decomp_submatrix(rows, block.e, columns, cache=cache, convention=convention)
    return rows, columns, entries


def convention_self_test(
    convention: str | None = None, cache: ColumnCache | None = None
) -> None:
    """
    Check the f_i convention against the e = 3 submatrix on
    (7,1), (6,2), (4,4), (4,2,2).

    Raises:
        ConventionError: if the computed submatrix is not the expected one
    """
    from ..certify.targets import DAGGER

    rows = [Partition(p) for p in ((7, 1), (6, 2), (4, 4), (4, 2, 2))]
    cache = cache if cache is not None else ColumnCache(path=None, persist=False)
    try:
        computed = decomp_submatrix(rows, 3, cache=cache, convention=convention)
    except ConventionError as err:
        raise ConventionError(
            f"convention {convention!r} fails the LLT self-test: {err.message}"
        ) from err
    if computed != DAGGER.entries:
        raise ConventionError(
            f"convention {convention!r} fails the LLT self-test",
            details={"computed": [[str(c) for c in row] for row in computed]},
        )
    logger.debug("LLT convention self-test passed", convention=convention)

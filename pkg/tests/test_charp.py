"""Tests for the characteristic-p bound propagation."""

import pytest

from hecke_schurian.algebra.charp import (
    ADJUSTMENT_ANCHOR,
    CharpDeduction,
    DeductionStep,
    EntryKnowledge,
    adjustment_lower_bound,
    deduce_charp_submatrix,
    remove_residue_nodes,
    restriction_bound,
    rouquier_constraint,
)
from hecke_schurian.algebra.column_cache import ColumnCache
from hecke_schurian.algebra.fock import decomp_submatrix, llt_column
from hecke_schurian.core.abacus import BlockId, block_partitions
from hecke_schurian.core.partitions import (
    Partition,
    boundary_nodes,
    is_e_regular,
    partitions_of,
)
from hecke_schurian.core.scopes import ScopesClass
from hecke_schurian.certify.targets import DAGGER, DDAGGER
from hecke_schurian.utils.error_handling import (
    BlockMismatchError,
    DeductionInconsistencyError,
    NotRouquierError,
    RestrictionError,
)

WEIGHT_TWO = [Partition(p) for p in ((7, 1), (6, 2), (4, 4), (4, 2, 2))]
ROUQUIER = [
    Partition(p)
    for p in (
        (12, 10, 5, 5, 4, 4, 3, 1, 1),
        (12, 7, 7, 6, 4, 4, 3, 1, 1),
        (12, 7, 5, 5, 4, 4, 3, 3, 2),
        (9, 7, 7, 6, 4, 4, 3, 3, 2),
    )
]


def P(*parts):
    return Partition(parts)


@pytest.fixture(scope="module")
def cache():
    return ColumnCache(path=None, persist=False)


def test_adjustment_lower_bound_on_target():
    matrix = adjustment_lower_bound(DDAGGER.entries)
    assert [[k.lower for k in row] for row in matrix] == DDAGGER.at_one()
    assert all(matrix[i][i].certified for i in range(4))
    assert matrix[3][0].upper is None
    assert matrix[3][0].provenance[0].anchor == ADJUSTMENT_ANCHOR


def test_crossing_bounds_raise():
    known = EntryKnowledge()
    known.raise_lower(2, "adjustment_lower", ADJUSTMENT_ANCHOR)
    with pytest.raises(DeductionInconsistencyError, match="deduction inconsistency"):
        known.lower_upper(1, "jantzen_zero", "Mathas, Section 5.2")


def test_bounds_only_move_monotonically():
    known = EntryKnowledge()
    assert known.lower_upper(3, "import", "x")
    assert not known.lower_upper(4, "import", "x")
    assert known.raise_lower(3, "import", "x")
    assert known.certified and known.value == 3
    assert len(known.provenance) == 2


def test_knowledge_serialization():
    known = EntryKnowledge()
    known.raise_lower(1, "adjustment_lower", ADJUSTMENT_ANCHOR)
    known.lower_upper(1, "axiom", "faywt2, Corollary 2.4")
    data = known.to_dict()
    assert data["provenance"][1] == {
        "rule": "axiom",
        "anchor": "faywt2, Corollary 2.4",
        "inputs": {},
        "lower": 1,
        "upper": 1,
    }
    restored = EntryKnowledge.from_dict(data)
    assert restored.certified
    assert restored.provenance[0] == DeductionStep("adjustment_lower", ADJUSTMENT_ANCHOR, 1, None)


def test_restriction_examples():
    bound = restriction_bound(P(2), P(2), 1, 1, 3)
    assert (bound.lam_bar, bound.mu_bar) == (P(1), P(1))
    assert restriction_bound(P(5, 1), P(6), 2, 0, 3).lam_bar == P(5, 1)
    with pytest.raises(RestrictionError, match="lambda_bar=2 has 2 addable 2-nodes, expected 1"):
        restriction_bound(P(2, 1), P(3), 2, 1, 3)
    with pytest.raises(RestrictionError, match="removable"):
        restriction_bound(P(2, 1), P(3), 0, 1, 3)


def test_remove_residue_nodes():
    assert remove_residue_nodes(P(3, 1), 3, 2) == P(2)
    assert remove_residue_nodes(P(2, 2), 3, 2) == P(2, 2)


def test_restriction_inequality_in_characteristic_zero(cache):
    """d_{λμ}(1) ≥ d_{λ̄μ̄}(1) whenever the restriction hypotheses hold."""
    e = 3
    checked = 0
    for n in range(2, 9):
        regular = [mu for mu in partitions_of(n) if is_e_regular(mu, e)]
        for mu in regular:
            column = llt_column(mu, e, cache=cache)
            for i in range(e):
                k = len(boundary_nodes(mu, e, i)[1])
                if k == 0:
                    continue
                for lam in partitions_of(n):
                    try:
                        bound = restriction_bound(lam, mu, i, k, e)
                    except RestrictionError:
                        continue
                    small = llt_column(bound.mu_bar, e, cache=cache)
                    assert column.coefficient(lam).at_one() >= small.coefficient(
                        bound.lam_bar
                    ).at_one()
                    checked += 1
    assert checked > 0


def test_characteristic_zero_certifies_everything(cache):
    block = BlockId.of(WEIGHT_TWO[0], 3)
    matrix = deduce_charp_submatrix(block, ["7,1", "6,2", "4,4", "4,2,2"], 0, cache=cache)
    assert [[k.value for k in row] for row in matrix] == DAGGER.at_one()


def test_axiom_closes_open_entries(cache):
    block = BlockId.of(WEIGHT_TWO[0], 3)
    char0 = decomp_submatrix(WEIGHT_TWO, 3, cache=cache)
    deduction = CharpDeduction(block, WEIGHT_TWO, 2, cache=cache, char0=char0)
    deduction.run()
    assert not deduction.rouquier
    assert not deduction.certified()
    assert deduction.close_with_axiom("faywt2, Corollary 2.4") > 0
    assert deduction.certified()
    assert deduction.assumptions == ["faywt2, Corollary 2.4"]
    assert [[k.value for k in row] for row in deduction.matrix()] == DAGGER.at_one()
    assert deduction.close_with_axiom("faywt2, Corollary 2.4") == 0


def test_imported_bounds_close_entries(cache):
    block = BlockId.of(WEIGHT_TWO[0], 3)
    deduction = CharpDeduction(block, WEIGHT_TWO, 2, cache=cache)
    lam, mu = P(6, 2), P(7, 1)
    assert deduction.import_bounds(
        lam, mu, None, 1, "restriction_upper", "Mathas, Section 6.1", i=1, k=2
    )
    known = deduction.entry(lam, mu)
    assert known.value == 1
    assert known.provenance[-1].inputs == {"i": 1, "k": 2}


def test_rows_must_share_the_block(cache):
    block = BlockId.of(WEIGHT_TWO[0], 3)
    with pytest.raises(BlockMismatchError):
        CharpDeduction(block, [P(7, 1), P(8)], 2, cache=cache)


def test_rouquier_constraint_needs_a_rouquier_block(cache):
    block = BlockId.of(WEIGHT_TWO[0], 3)
    with pytest.raises(NotRouquierError):
        rouquier_constraint(block, P(6, 2), P(7, 1), cache=cache)


@pytest.mark.slow
def test_rouquier_block_is_certified_in_characteristic_two(cache):
    block = ScopesClass(e=3, counts=(1, 4, 7), weight=4).block()
    assert set(ROUQUIER) <= set(block_partitions(block))
    char0 = decomp_submatrix(ROUQUIER, 3, cache=cache)
    order = DDAGGER.match(char0)
    assert order is not None
    rows = [ROUQUIER[k] for k in order]
    char0 = [[char0[i][j] for j in order] for i in order]
    deduction = CharpDeduction(block, rows, 2, cache=cache, char0=char0)
    matrix = deduction.run()
    assert deduction.rouquier
    assert deduction.certified()
    assert deduction.assumptions == []
    assert [[k.value for k in row] for row in matrix] == DDAGGER.at_one()
    rules = {step.rule for step in matrix[2][1].provenance}
    assert "jantzen_zero" in rules

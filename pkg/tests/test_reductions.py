"""Tests for row, column, Scopes and runner reductions."""

import random

import pytest

from hecke_schurian.algebra.column_cache import ColumnCache
from hecke_schurian.algebra.fock import decomp_submatrix
from hecke_schurian.certify.reductions import (
    ReducedRows,
    ReductionStep,
    apply_removals,
    char0_matrix,
    column_removal,
    delete_runner,
    normalize_rows,
    reduce_common,
    reduce_runners,
    remove_first_row,
    row_removal,
)
from hecke_schurian.core.abacus import BlockId, block_partitions, core_and_weight
from hecke_schurian.core.partitions import Partition, dominates, is_e_regular, partitions_of
from hecke_schurian.core.scopes import ScopesClass, class_of_block, normalize_class
from hecke_schurian.utils.error_handling import ReductionError


def P(*parts):
    return Partition(parts)


WEIGHT_THREE_ROWS = [P(9, 3, 2), P(8, 4, 2), P(6, 6, 2), P(6, 4, 4)]
WEIGHT_TWO_ROWS = [P(7, 1), P(6, 2), P(4, 4), P(4, 2, 2)]


@pytest.fixture(scope="module")
def cache():
    return ColumnCache(path=None, persist=False)


def test_row_removal():
    assert row_removal(P(3, 1), P(3, 2)) == (P(1), P(2))
    with pytest.raises(ReductionError, match="first rows differ"):
        row_removal(P(3, 1), P(2, 2))


def test_column_removal():
    assert column_removal(P(2, 1), P(3, 2)) == (P(1), P(2, 1))
    assert column_removal(P(1, 1, 1), P(1, 1, 1)) == (P(), P())
    with pytest.raises(ReductionError, match="first columns differ"):
        column_removal(P(2, 1), P(3))


def _removal_pairs(e, sizes):
    """(kind, λ, μ) with μ e-regular, μ ▷ λ in one block, sharing a first row or column."""
    pairs = []
    for n in sizes:
        by_block = {}
        for lam in partitions_of(n):
            by_block.setdefault(core_and_weight(lam, e), []).append(lam)
        for members in by_block.values():
            for lam in members:
                for mu in members:
                    if lam == mu or not is_e_regular(mu, e) or not dominates(mu, lam):
                        continue
                    if lam.part(1) == mu.part(1):
                        pairs.append(("row", lam, mu))
                    if len(lam) == len(mu):
                        pairs.append(("column", lam, mu))
    return pairs


@pytest.mark.parametrize("e", [3, 4])
def test_removal_keeps_graded_decomposition_numbers(e, cache):
    pairs = random.Random(20 + e).sample(_removal_pairs(e, range(4, 12)), 25)
    for kind, lam, mu in pairs:
        small_lam, small_mu = (row_removal if kind == "row" else column_removal)(lam, mu)
        assert is_e_regular(small_mu, e)
        full = decomp_submatrix([lam], e, columns=[mu], cache=cache)[0][0]
        reduced = decomp_submatrix([small_lam], e, columns=[small_mu], cache=cache)[0][0]
        assert full == reduced, (kind, lam, mu)


def test_remove_first_row_applies_to_every_row():
    assert remove_first_row([P(8, 6), P(8, 5, 1), P(8, 3, 2, 1)]) == [P(6), P(5, 1), P(3, 2, 1)]
    assert remove_first_row([]) == []


def test_weight_three_rows_reduce_to_weight_two():
    reduced = apply_removals(ReducedRows(WEIGHT_THREE_ROWS, 3), ["column", "column"])

    assert reduced.rows == WEIGHT_TWO_ROWS
    assert [s.kind for s in reduced.steps] == ["column", "column"]
    assert reduced.steps[0].detail == {"weight_before": 3, "weight_after": 3}
    assert reduced.steps[1].detail == {"weight_before": 3, "weight_after": 2}
    assert reduced.weight == 2


def test_unknown_removal_is_rejected():
    with pytest.raises(ReductionError, match="unknown removal"):
        apply_removals(ReducedRows(WEIGHT_TWO_ROWS, 3), ["diagonal"])


def test_reduce_common_stops_when_nothing_is_shared():
    reduced = reduce_common(ReducedRows(WEIGHT_THREE_ROWS, 3))
    assert reduced.rows == WEIGHT_TWO_ROWS
    assert len(reduced.steps) == 2

    again = reduce_common(reduced)
    assert again.rows == WEIGHT_TWO_ROWS
    assert again.steps == reduced.steps


def test_reduce_common_keeps_weight_at_least_two():
    rows = [P(5, 1), P(3, 3)]
    reduced = reduce_common(ReducedRows(rows, 3))
    assert reduced.weight >= 2


def test_reduction_step_serialization():
    step = ReductionStep("scopes", {"from_class": "[1,4,1]", "to_class": "[1,2,1]", "moves": [[1, 6]]})
    data = step.to_dict()
    assert data["kind"] == "scopes"
    assert ReductionStep.from_dict(data) == step


def test_normalize_rows_is_a_no_op_on_normalized_blocks():
    reduced = ReducedRows(WEIGHT_THREE_ROWS, 3)
    assert normalize_rows(reduced) is reduced


def test_normalize_rows_moves_to_the_normalized_class():
    block = BlockId(e=3, core=ScopesClass.parse("[1,4,1]", 2).core(), weight=2)
    rows = [lam for lam in block_partitions(block) if is_e_regular(lam, 3)][:3]

    reduced = normalize_rows(ReducedRows(rows, 3))

    assert class_of_block(reduced.block) == normalize_class(block)
    assert len(reduced.rows) == 3
    step = reduced.steps[-1]
    assert step.kind == "scopes"
    assert step.detail["to_class"] == str(normalize_class(block))
    assert step.detail["moves"]


def test_delete_runner_on_an_empty_display():
    assert delete_runner(P(), 3, 2, 3) == P()


def test_reduce_runners_respects_the_floor():
    rows, e = reduce_runners(WEIGHT_TWO_ROWS, 3)
    assert (rows, e) == (WEIGHT_TWO_ROWS, 3)


def test_char0_matrix_without_runner_reduction(cache):
    matrix, step = char0_matrix(WEIGHT_TWO_ROWS, 3, cache)
    assert step is None
    assert matrix == decomp_submatrix(WEIGHT_TWO_ROWS, 3, cache=cache)


def test_runner_reduction_never_changes_the_matrix(cache):
    block = BlockId(e=5, core=P(), weight=2)
    rows = [lam for lam in block_partitions(block) if is_e_regular(lam, 5)][:4]

    matrix, step = char0_matrix(rows, 5, cache, runner_reduction=True)

    assert matrix == decomp_submatrix(rows, 5, cache=cache)
    if step is not None:
        assert step.kind == "runner"
        assert step.detail["verified"] is True

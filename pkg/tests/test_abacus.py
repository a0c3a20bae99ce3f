"""Tests for beta-numbers, cores, quotients and block enumeration."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_schurian.core.abacus import (
    AbacusDisplay,
    BlockId,
    beta_numbers,
    block_partitions,
    core_and_weight,
    core_bead_counts,
    core_from_counts,
    format_quotient,
    from_beta,
    from_quotient,
    is_core,
    multipartitions,
    parse_multipartition,
    quotient,
    runner_positions,
)
from hecke_schurian.core.partitions import EMPTY, Partition, partitions_of
from hecke_schurian.utils.error_handling import AbacusError

partitions = st.integers(min_value=0, max_value=40).flatmap(
    lambda n: st.sampled_from(partitions_of(n))
)


def P(*parts):
    return Partition(parts)


def test_worked_example_beta_numbers():
    assert beta_numbers(P(5, 2, 2), 7) == (11, 7, 6, 3, 2, 1, 0)
    assert beta_numbers(P(9, 9, 3, 3, 1), 7) == (15, 14, 7, 6, 3, 1, 0)
    assert beta_numbers(EMPTY, 3) == (2, 1, 0)
    with pytest.raises(AbacusError):
        beta_numbers(P(2, 1, 1), 2)


def test_worked_example_core_positions_and_quotient():
    lam = P(9, 9, 3, 3, 1)
    assert core_and_weight(lam, 4) == (P(5, 2, 2), 4)
    assert runner_positions(P(5, 2, 2), 4, 7) == (0, 1, 6, 11)
    assert runner_positions(P(5, 2, 2), 4) == (0, 1, 6, 11)
    assert quotient(lam, 4) == (P(1), P(2, 1), EMPTY, EMPTY)
    assert from_quotient(P(5, 2, 2), (P(1), P(2, 1), EMPTY, EMPTY), 4) == lam


def test_runner_positions_of_larger_core():
    core = P(10, 6, 4, 3, 2, 2, 1, 1, 1, 1)
    assert is_core(core, 5)
    assert runner_positions(core, 5, 15) == (0, 8, 12, 16, 24)
    # fewer beads shift every position by the same amount
    assert runner_positions(core, 5, 10) == (-5, 3, 7, 11, 19)
    assert runner_positions(EMPTY, 3, 3) == (0, 1, 2)


def test_runner_positions_rejects_non_core():
    with pytest.raises(AbacusError, match="not a 3-core"):
        runner_positions(P(3), 3)


@given(partitions, st.integers(min_value=0, max_value=6))
def test_beta_round_trip(lam, extra):
    assert from_beta(beta_numbers(lam, len(lam) + extra)) == lam


@given(partitions, st.integers(min_value=2, max_value=6))
def test_size_identity_and_core_fixed_point(lam, e):
    core, weight = core_and_weight(lam, e)
    assert lam.size == core.size + e * weight
    assert core_and_weight(core, e) == (core, 0)


@given(partitions, st.integers(min_value=3, max_value=6))
def test_quotient_inverts_from_quotient(lam, e):
    core, weight = core_and_weight(lam, e)
    q = quotient(lam, e)
    assert sum(c.size for c in q) == weight
    assert from_quotient(core, q, e) == lam


def test_quotient_of_core_is_empty():
    assert quotient(P(5, 2, 2), 4) == (EMPTY,) * 4


def test_seven_one_round_trips():
    q = quotient(P(7, 1), 3)
    assert sum(c.size for c in q) == 2
    assert from_quotient(P(1, 1), q, 3) == P(7, 1)


def test_canonical_frame_has_single_bead_on_runner_zero():
    for core in [EMPTY, P(1, 1), P(5, 2, 2), P(4, 2)]:
        e = 4 if core == P(5, 2, 2) else 3
        counts = core_bead_counts(core, e)
        assert counts[0] == 1
        assert core_from_counts(counts, e) == core


def test_block_partitions_examples():
    assert block_partitions(BlockId(e=3, core=EMPTY, weight=1)) == (
        P(3),
        P(2, 1),
        P(1, 1, 1),
    )
    # the weight-1 block of core (1,1) contains (3,2), not (2,2,1)
    assert block_partitions(BlockId(e=3, core=P(1, 1), weight=1)) == (
        P(4, 1),
        P(3, 2),
        P(1, 1, 1, 1, 1),
    )
    for partition in block_partitions(BlockId(e=3, core=P(1, 1), weight=2)):
        assert partition.size == 8


@pytest.mark.parametrize(
    "e, counts", [(3, [1, 3, 9, 22, 51]), (4, [1, 4, 14, 40, 105])]
)
def test_multipartition_counts(e, counts):
    assert [len(multipartitions(w, e)) for w in range(5)] == counts


@pytest.mark.parametrize("e", [3, 4, 5])
@pytest.mark.parametrize("w", [0, 1, 2, 3, 4])
def test_block_partitions_share_core_and_weight(e, w):
    for core in [EMPTY, core_from_counts([1] + [2] * (e - 1), e)]:
        block = BlockId(e=e, core=core, weight=w)
        members = block_partitions(block)
        assert len(members) == len(multipartitions(w, e))
        assert all(core_and_weight(lam, e) == (core, w) for lam in members)
        assert list(members) == sorted(members, reverse=True)


def test_block_id_validation():
    with pytest.raises(AbacusError):
        BlockId(e=3, core=P(3), weight=1)
    block = BlockId.of(P(7, 1), 3)
    assert block == BlockId(e=3, core=P(1, 1), weight=2)
    assert block.size == 8
    assert block.contains(P(4, 4))
    assert not block.contains(P(8))


def test_abacus_render():
    display = AbacusDisplay.of(EMPTY, 3)
    assert display.render() == "b b b\n- - -"
    display = AbacusDisplay.of(P(9, 9, 3, 3, 1), 4)
    assert display.bead_count == 7
    assert display.partition() == P(9, 9, 3, 3, 1)
    assert display.render().splitlines()[0] == "b b - b"


def test_quotient_text_forms():
    q = (P(1), P(2, 1), EMPTY, EMPTY)
    assert format_quotient(q) == "((1),(2,1),∅,∅)"
    assert parse_multipartition("1|2,1||", 4) == q

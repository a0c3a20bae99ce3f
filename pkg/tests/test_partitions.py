"""Tests for partition combinatorics."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_schurian.core.partitions import (
    EMPTY,
    Node,
    Partition,
    addable_nodes,
    boundary_nodes,
    conjugate,
    dominates,
    format_partition,
    hook_lengths,
    is_e_regular,
    parse_partition,
    parse_partition_list,
    partitions_of,
    removable_nodes,
    residue_content,
)
from hecke_schurian.utils.error_handling import IncomparableSizesError, PartitionError

partitions = st.integers(min_value=0, max_value=30).flatmap(
    lambda n: st.sampled_from(partitions_of(n))
)


def P(*parts):
    return Partition(parts)


def test_partition_invariants():
    """Parts must be positive and weakly decreasing; trailing zeros drop."""
    assert P(3, 1, 0, 0) == P(3, 1)
    assert P() == EMPTY and EMPTY.size == 0
    with pytest.raises(PartitionError):
        P(1, 2)
    with pytest.raises(PartitionError):
        P(2, -1)


def test_parse_partition_shorthand():
    assert parse_partition("4,2^2") == P(4, 2, 2)
    assert parse_partition("1^5") == P(1, 1, 1, 1, 1)
    assert parse_partition(" (7, 1) ") == P(7, 1)
    assert parse_partition("") == EMPTY
    assert parse_partition("-") == EMPTY
    assert parse_partition_list("7,1;6,2;4,4;4,2,2") == [
        P(7, 1),
        P(6, 2),
        P(4, 4),
        P(4, 2, 2),
    ]


def test_parse_partition_reports_position():
    with pytest.raises(PartitionError) as info:
        parse_partition("4,x,1")
    assert info.value.details["position"] == 2
    with pytest.raises(PartitionError) as info:
        parse_partition("2,3")
    assert info.value.details["position"] == 2


def test_format_partition():
    assert str(P(4, 2, 2)) == "4,2,2"
    assert str(EMPTY) == "∅"
    assert format_partition(P(4, 2, 2), compact=True) == "4,2^2"


@pytest.mark.parametrize(
    "lam, expected",
    [((), ()), ((5, 2, 2), (3, 3, 1, 1, 1)), ((1, 1, 1, 1, 1), (5,))],
)
def test_conjugate_examples(lam, expected):
    assert conjugate(P(*lam)) == P(*expected)


@given(partitions)
def test_conjugate_is_involutive(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


def test_dominance_examples():
    assert dominates(P(4, 4), P(4, 2, 2))
    assert dominates(P(3, 2), P(3, 2))
    assert not dominates(P(3, 3), P(4, 1, 1))
    with pytest.raises(IncomparableSizesError, match="incomparable sizes"):
        dominates(P(3), P(2))


@pytest.mark.parametrize("n", range(0, 13))
def test_dominance_is_partial_order(n):
    """Reflexive, antisymmetric and transitive on all partitions of n."""
    parts = partitions_of(n)
    above = {(a, b): dominates(a, b) for a in parts for b in parts}
    for a in parts:
        assert above[a, a]
        for b in parts:
            if a != b and above[a, b]:
                assert not above[b, a]
                assert a > b  # lexicographic order refines dominance
            for c in parts:
                if above[a, b] and above[b, c]:
                    assert above[a, c]


@pytest.mark.parametrize("n", range(0, 13))
def test_conjugation_reverses_dominance(n):
    parts = partitions_of(n)
    for a in parts:
        for b in parts:
            assert dominates(a, b) == dominates(conjugate(b), conjugate(a))


@pytest.mark.parametrize(
    "lam, e, expected",
    [((2, 2, 1), 3, True), ((1, 1, 1), 3, False), ((4, 2, 2), 3, True), ((), 3, True)],
)
def test_is_e_regular(lam, e, expected):
    assert is_e_regular(P(*lam), e) is expected


def test_boundary_nodes_examples():
    assert boundary_nodes(EMPTY, 3, 0) == ([Node(1, 1)], [])
    assert boundary_nodes(P(2), 3, 2) == ([Node(1, 3), Node(2, 1)], [])
    addable, removable = boundary_nodes(P(1, 1), 3, 2)
    assert addable == []
    assert removable == [Node(2, 1)]
    with pytest.raises(PartitionError):
        boundary_nodes(P(1), 3, 3)


def _brute_force_corners(lam):
    cells = set(lam.nodes())
    width = (lam[0] if lam else 0) + 1
    height = len(lam) + 1
    addable, removable = [], []
    for r in range(1, height + 1):
        for c in range(1, width + 1):
            node = Node(r, c)
            if node in cells:
                try:
                    lam.remove_node(node)
                    removable.append(node)
                except PartitionError:
                    pass
            else:
                try:
                    lam.add_node(node)
                    addable.append(node)
                except PartitionError:
                    pass
    return addable, removable


@given(partitions)
def test_addable_removable_match_brute_force(lam):
    addable, removable = _brute_force_corners(lam)
    assert addable_nodes(lam) == addable
    assert removable_nodes(lam) == removable
    for node in addable:
        assert lam.add_node(node).remove_node(node) == lam


@given(partitions, st.integers(min_value=2, max_value=6))
def test_boundary_nodes_split_by_residue(lam, e):
    total_add = total_rem = 0
    for i in range(e):
        addable, removable = boundary_nodes(lam, e, i)
        assert all(n.residue(e) == i for n in addable + removable)
        assert [n.row for n in addable] == sorted(n.row for n in addable)
        total_add += len(addable)
        total_rem += len(removable)
    assert total_add == len(addable_nodes(lam))
    assert total_rem == len(removable_nodes(lam))


def test_hook_length_examples():
    assert hook_lengths(P(1)) == {Node(1, 1): 1}
    assert hook_lengths(P(2, 1)) == {Node(1, 1): 3, Node(1, 2): 1, Node(2, 1): 1}
    assert hook_lengths(P(2, 2, 1))[Node(1, 1)] == 4


@given(partitions)
def test_hook_multiset_is_conjugation_invariant(lam):
    assert sorted(hook_lengths(lam).values()) == sorted(
        hook_lengths(conjugate(lam)).values()
    )


def test_residue_content_counts_nodes():
    assert residue_content(P(2, 1), 3) == (1, 1, 1)
    assert sum(residue_content(P(7, 1), 3)) == 8


def test_partitions_of_counts():
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partitions_of(4)[0] == P(4) and partitions_of(4)[-1] == P(1, 1, 1, 1)

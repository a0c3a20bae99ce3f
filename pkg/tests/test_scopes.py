"""Tests for Scopes classes, runner swaps and normalization."""

import pytest

from hecke_schurian.core.abacus import (
    BlockId,
    block_partitions,
    canonical_bead_count,
    core_and_weight,
    core_bead_counts,
    is_core,
)
from hecke_schurian.core.partitions import Partition, is_e_regular
from hecke_schurian.core.scopes import (
    ScopesClass,
    conjugate_class,
    is_rouquier,
    normalize_class,
    normalized_classes,
    phi,
    phi_inverse,
    rotate_class,
    scopes_path,
    transport,
    transport_back,
)
from hecke_schurian.utils.error_handling import (
    AbacusError,
    PartitionError,
    ScopesConditionError,
)


def C(text, weight=4):
    return ScopesClass.parse(text, weight)


def test_parse_class_literal():
    cls = C("[1, 4, 7]")
    assert cls.counts == (1, 4, 7) and cls.e == 3 and cls.weight == 4
    assert str(cls) == "[1,4,7]"
    with pytest.raises(PartitionError):
        C("1,4,7")


@pytest.mark.parametrize(
    "before, after",
    [("[7,1,4]", "[1,4,6]"), ("[6,1,3]", "[1,3,5]")],
)
def test_rotation_identities(before, after):
    assert rotate_class(C(before)) == C(after)


def test_double_rotation_identity():
    assert rotate_class(rotate_class(C("[4,7,1]"))) == C("[1,3,6]")


def test_rotation_needs_two_beads_on_runner_zero():
    with pytest.raises(AbacusError):
        rotate_class(C("[1,4,7]"))


def test_rotation_preserves_core():
    for text in ["[7,1,4]", "[4,7,1]", "[6,1,3]", "[3,5,2,2]"]:
        cls = C(text)
        assert rotate_class(cls).core() == cls.core()


@pytest.mark.parametrize("s1", [3, 4, 5, 6])
def test_adjacent_counts_normalize_to_134(s1):
    block = C(f"[1,{s1},{s1 + 1}]", weight=3).block()
    assert normalize_class(block) == C("[1,3,4]", weight=3)


def test_rouquier_class_is_normalized():
    rouquier = C("[1,4,7]")
    assert rouquier.is_normalized
    assert normalize_class(rouquier) == rouquier
    assert is_rouquier(rouquier)
    assert not is_rouquier(C("[1,4,6]"))
    assert scopes_path(rouquier.block()) == []


def test_core_is_its_own_class():
    core = Partition((5, 2, 2))
    block = BlockId(e=4, core=core, weight=0)
    assert normalize_class(block).counts == core_bead_counts(core, 4)


def test_two_swaps_reach_rouquier_from_148():
    block = C("[1,4,8]").block()
    path = scopes_path(block)
    assert len(path) == 2
    assert normalize_class(block) == C("[1,4,7]")


@pytest.mark.parametrize(
    "cls, conj",
    [("[1,1,3]", "[1,3,3]"), ("[1,2,4]", "[1,3,4]"), ("[1,4,1]", "[1,4,3]")],
)
def test_conjugate_classes(cls, conj):
    assert conjugate_class(C(cls), 4) == C(conj)


@pytest.mark.parametrize("e, w", [(3, 2), (3, 3), (3, 4), (4, 2)])
def test_conjugation_is_involution_on_normalized_classes(e, w):
    for cls in normalized_classes(e, w):
        assert conjugate_class(conjugate_class(cls)) == cls


def test_conjugate_formula_for_triples():
    """[1,s1,s2]' is [1,s2-s1+1,s2] when s1 <= s2, else [1,s1,s1-s2]."""
    for cls in normalized_classes(3, 4):
        s1, s2 = cls.signature
        expected = (1, s2 - s1 + 1, s2) if s1 <= s2 else (1, s1, s1 - s2)
        assert conjugate_class(cls).counts == expected


@pytest.mark.parametrize("w", [1, 2, 3, 4, 5])
def test_number_of_normalized_classes(w):
    classes = normalized_classes(3, w)
    expected = sum(s1 + w - 1 for s1 in range(1, w + 1))
    assert len(classes) == expected
    assert all(cls.is_normalized for cls in classes)
    assert len({cls.core() for cls in classes}) == expected
    if w == 4:
        assert len(classes) == 22


@pytest.mark.parametrize("e, w", [(3, 2), (3, 4), (4, 3)])
def test_normalize_is_idempotent_and_rotation_invariant(e, w):
    for cls in normalized_classes(e, w):
        assert normalize_class(cls) == cls
        lifted = ScopesClass(
            e=e, counts=(cls.counts[-1] + 1, *cls.counts[:-1]), weight=w
        )
        assert rotate_class(lifted) == cls
        assert normalize_class(lifted) == cls


def test_phi_maps_cores_to_cores():
    core = C("[1,4,7]").core()
    image = phi(core, 3, 2, canonical_bead_count(core, 3))
    assert is_core(image, 3)
    assert core_bead_counts(image, 3) == (1, 7, 4)


def test_phi_requires_gap_at_least_weight():
    block = C("[1,3,3]", weight=2).block()
    lam = block_partitions(block)[0]
    with pytest.raises(ScopesConditionError, match="Scopes condition violated"):
        phi(lam, 3, 2, canonical_bead_count(block.core, 3))


@pytest.mark.parametrize("w", [1, 2, 3])
def test_phi_is_a_bijection_preserving_regularity(w):
    block = C(f"[1,{w + 1},{w + 1}]", weight=w).block()
    r = canonical_bead_count(block.core, 3)
    members = block_partitions(block)
    images = [phi(lam, 3, 1, r) for lam in members]
    target_core, _ = core_and_weight(images[0], 3)
    assert len(set(images)) == len(members)
    assert set(images) == set(block_partitions(BlockId(3, target_core, w)))
    for lam, image in zip(members, images, strict=True):
        assert phi_inverse(image, 3, 1, r) == lam
        assert is_e_regular(lam, 3) == is_e_regular(image, 3)


def test_transport_along_path_lands_in_normalized_block():
    block = C("[1,2,6]", weight=2).block()
    path = scopes_path(block)
    assert path
    target = normalize_class(block).block()
    images = {transport(lam, 3, path) for lam in block_partitions(block)}
    assert images == set(block_partitions(target))
    for lam in block_partitions(block):
        assert transport_back(transport(lam, 3, path), 3, path) == lam

import pytest

from services.group import (
    GroupHomomorphism,
    cyclic_group,
    direct_product,
    extend_homomorphism,
    group_from_permutations,
    group_from_table,
    inner_automorphism,
    subgroup_as_group,
    trivial_homomorphism,
)
from utils.errors import (
    BadPermutation,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotClosedTable,
    UnknownElement,
)


def test_d8_basics(d8):
    assert d8.order == 8
    assert d8.identity == 0
    assert d8.names[0] == "e"
    assert not d8.is_abelian
    assert len(d8.all_subgroups()) == 10
    assert sum(d8.is_normal_subgroup(h) for h in d8.all_subgroups()) == 6


def test_permutation_product_applies_right_factor_first(d8):
    r, s = d8.element("r"), d8.element("s")
    assert d8.mul(r, s) == d8.element("[3,2,1,4]")
    assert d8.mul(r, s) == d8.mul(s, d8.element("r3"))


def test_inverse_conjugate_commutator(d8):
    r, s = d8.element("r"), d8.element("s")
    assert d8.inv(r) == d8.element("r3")
    assert d8.conj(s, r) == d8.element("r3")
    assert d8.comm(r, s) == d8.element("r2")


def test_subgroup_counts(loader, s3):
    assert len(s3.all_subgroups()) == 6
    assert sum(s3.is_normal_subgroup(h) for h in s3.all_subgroups()) == 3
    assert len(loader.group("s4").all_subgroups()) == 30
    assert len(loader.group("q8").all_subgroups()) == 6


def test_generated_subgroup_and_generating_set(d8):
    r2, s = d8.element("r2"), d8.element("s")
    assert d8.generated_subgroup([r2, s]) == frozenset(d8.element(n) for n in ("e", "r2", "s", "sr2"))
    gens = d8.generating_set()
    assert d8.generated_subgroup(gens) == frozenset(d8.elements)
    assert len(gens) == 2
    assert d8.is_subgroup([0, r2])
    assert not d8.is_subgroup([0, d8.element("r")])


def test_table_validation():
    with pytest.raises(NoIdentity):
        group_from_table("bad", [[1, 0], [0, 1]])
    with pytest.raises(NoInverse):
        group_from_table("bad", [[0, 1], [1, 1]])
    # identity and inverses present, but (1*1)*2 != 1*(1*2)
    with pytest.raises(NotAssociative):
        group_from_table("bad", [[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    with pytest.raises(NotClosedTable):
        group_from_table("ragged", [[0, 1], [1]])


def test_bad_permutation():
    with pytest.raises(BadPermutation):
        group_from_permutations("bad", 3, [[1, 1, 2]])


def test_unknown_element(d8):
    with pytest.raises(UnknownElement):
        d8.element("t")
    with pytest.raises(UnknownElement):
        d8.element(8)


def test_constructed_groups(z4):
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert v4.order == 4
    assert v4.is_abelian
    assert len(v4.all_subgroups()) == 5
    sub = subgroup_as_group(z4, [0, 2])
    assert sub.order == 2
    assert sub.identity == 0


def test_homomorphisms(z4, d8):
    z2 = cyclic_group(2)
    f = extend_homomorphism(z4, z2, {1: 1})
    assert f is not None
    assert f.images == (0, 1, 0, 1)
    assert f.is_surjective and not f.is_injective
    assert extend_homomorphism(z2, z4, {1: 1}) is None

    inner = inner_automorphism(d8, d8.element("r"))
    assert inner.is_injective and inner.is_surjective
    assert trivial_homomorphism(d8, z4).images == (0,) * 8
    with pytest.raises(NotAHomomorphism):
        GroupHomomorphism(z4, z2, (0, 1, 1, 0))

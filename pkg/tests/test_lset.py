import pytest

from services.group import inner_automorphism, trivial_homomorphism
from services.lset import (
    LPoint,
    characteristic,
    chi,
    constant,
    contains,
    has_sup_property,
    intersection,
    level,
    make_lsubset,
    reconstruct,
    set_product,
    transport,
    union,
)
from utils.errors import CarrierMismatch, LatticeMismatch, UnknownElement


def names(group, members):
    return {group.names[x] for x in members}


def test_fixture_values(d8_mu):
    assert d8_mu.describe()["r2"] == "b"
    assert d8_mu.describe()["r"] == "0"
    lattice = d8_mu.lattice
    assert lattice.elements[d8_mu.tip] == "1"
    assert lattice.elements[d8_mu.tail] == "0"
    assert not d8_mu.is_constant


def test_levels(d8_mu):
    group, e = d8_mu.group, d8_mu.lattice.index
    assert names(group, level(d8_mu, e["a"])) == {"e", "r2", "s", "sr2"}
    assert names(group, level(d8_mu, e["b"])) == {"e", "r2"}
    assert names(group, level(d8_mu, e["a"], strong=True)) == {"e", "r2", "s"}
    assert level(d8_mu, e["0"]) == frozenset(group.elements)


def test_reconstruct(d8_mu):
    assert reconstruct(d8_mu) == d8_mu


def test_sup_property(d8_mu, d8, chain2):
    # b and c are both values and incomparable
    assert not has_sup_property(d8_mu)
    assert has_sup_property(characteristic(d8, chain2, [0]))


def test_chi_joins_points_at_the_same_element(d8, l3):
    e = l3.index
    eta = chi(d8, l3, [LPoint(1, e["b"]), LPoint(1, e["c"]), LPoint(2, e["a"])])
    assert eta.values[1] == e["1"]
    assert eta.values[2] == e["a"]
    assert eta.values[0] == e["0"]


def test_union_intersection_contains(d8_mu, d8, l3):
    e = l3.index
    point = LPoint(d8.element("r"), e["c"]).as_lsubset(d8, l3)
    both = union(d8_mu, point)
    assert contains(both, d8_mu)
    assert contains(both, point)
    assert not contains(d8_mu, point)
    assert intersection(d8_mu, point) == constant(d8, l3, "0")


def test_set_product_with_constant(d8_mu, d8, l3):
    full = set_product(constant(d8, l3, "1"), d8_mu)
    assert full == constant(d8, l3, "1")


def test_transport(d8_mu, d8, z4, l3):
    f = trivial_homomorphism(d8, z4)
    image = transport(f, "image", d8_mu)
    assert image.values == (l3.index["1"], 0, 0, 0)
    g = inner_automorphism(d8, d8.element("r"))
    moved = transport(g, "preimage", d8_mu)
    # preimage value at x is mu(r x r^-1)
    for x in d8.elements:
        assert moved.values[x] == d8_mu.values[d8.conj(d8.element("r"), x)]
    with pytest.raises(CarrierMismatch):
        transport(f, "preimage", d8_mu)


def test_carrier_checks(d8_mu, d8, chain2):
    with pytest.raises(LatticeMismatch):
        union(d8_mu, constant(d8, chain2, "1"))


def test_make_lsubset_rejects_unknown_labels(d8, l3):
    with pytest.raises(UnknownElement):
        make_lsubset(d8, l3, {"t": "a"}, "0")
    with pytest.raises(UnknownElement):
        make_lsubset(d8, l3, {"r": "q"}, "0")

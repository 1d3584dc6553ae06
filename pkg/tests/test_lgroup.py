import pytest

from services.lgroup import (
    central_chain,
    closure_series,
    commutator,
    conjugate_closure,
    coset,
    generated,
    is_in_normalizer,
    is_lsubgroup,
    is_lsubgroup_of,
    is_normal,
    is_normal_by_levels,
    is_proper,
    nilpotency_class,
    normalizer,
    normalizer_chain,
    trivial_lsubgroup,
)
from services.lset import LPoint, chi, constant, level
from utils.errors import NotAChain, NotAnLSubgroup, NotContained, TipEqualsTail


def test_fixture_is_lsubgroup(d8_mu):
    assert is_lsubgroup(d8_mu).verdict
    assert is_lsubgroup(d8_mu, "levels").verdict
    with pytest.raises(NotAChain):
        is_lsubgroup(d8_mu, "strong-levels")


def test_generator_input_is_not_lsubgroup(loader):
    eta = loader.lsubset("d8_eta")
    witness = is_lsubgroup(eta)
    assert not witness.verdict
    assert witness.counterexample is not None
    assert witness.describe()
    x, y = witness.counterexample[1:]
    lattice, group = eta.lattice, eta.group
    if witness.counterexample[0] == "pair":
        assert not lattice.leq(lattice.meet(eta.values[x], eta.values[y]), eta.values[group.mul(x, y)])
    assert not is_lsubgroup(eta, "levels").verdict


def test_generated_from_points_is_mu(d8_mu, d8, l3):
    e = l3.index
    points = [LPoint(d8.element("r2"), e["b"]), LPoint(d8.element("s"), e["c"])]
    assert generated(chi(d8, l3, points), d8_mu) == d8_mu


def test_generation_level_by_level(d8_mu, d8, l3):
    e = l3.index
    eta = chi(d8, l3, [LPoint(d8.element("r2"), e["b"]), LPoint(d8.element("s"), e["c"])])

    def members(*names):
        return frozenset(d8.element(n) for n in names)

    expected = {
        "a": members("e", "r2", "s", "sr2"),
        "b": members("e", "r2"),
        "c": members("e", "s"),
        "0": frozenset(d8.elements),
        "1": members("e"),
    }
    for value, subgroup in expected.items():
        assert d8.generated_subgroup(level(eta, e[value])) == subgroup
        assert level(d8_mu, e[value]) == subgroup


def test_generated_from_file_is_mu(loader, d8_mu):
    assert generated(loader.lsubset("d8_eta"), d8_mu) == d8_mu


def test_generated_needs_containment(d8_mu, d8, l3):
    with pytest.raises(NotContained):
        generated(constant(d8, l3, "1"), d8_mu)


def test_normality_of_fixture(d8_mu):
    # the level at c is {e, s}, which is not normal in D8
    assert not is_normal("in-group", d8_mu)
    assert not is_normal_by_levels("in-group", d8_mu)
    assert trivial_lsubgroup(d8_mu).describe() == {
        name: ("1" if name == "e" else "0") for name in d8_mu.group.names
    }


def test_reflection_subgroup(loader):
    eta, one = loader.lsubset_pair("d8_s", "d8_one")
    group = one.group
    four = {group.element(n) for n in ("e", "r2", "s", "sr2")}
    expected = one.with_values([one.lattice.top if x in four else one.lattice.bottom for x in group.elements])

    assert is_proper(eta, one)
    assert not is_proper(one, one)
    assert not is_normal("in-lgroup", eta, one)
    assert normalizer(eta, one) == expected
    assert conjugate_closure(eta, one) == expected
    assert is_normal("in-lgroup", eta, expected)

    stages = normalizer_chain(eta, one)
    assert stages == [eta, expected, one]

    series = closure_series(eta, one)
    assert series.reached_eta
    assert series.stages[-1] == eta


def test_normalizer_points(loader):
    eta, one = loader.lsubset_pair("d8_s", "d8_one")
    group, top = one.group, one.lattice.top
    assert is_in_normalizer(LPoint(group.element("r2"), top), eta)
    assert not is_in_normalizer(LPoint(group.element("r"), top), eta)
    assert is_in_normalizer(LPoint(group.element("r"), one.lattice.bottom), eta)


def test_central_coset(d8_mu, d8, l3):
    p = LPoint(d8.element("r2"), l3.index["b"])
    assert coset("left", p, d8_mu) == coset("right", p, d8_mu)


def test_crisp_nilpotency(crisp, d8, z4, s3):
    one_d8 = crisp("d8", "chain2", d8.names)
    bottom = one_d8.lattice.bottom
    assert nilpotency_class(one_d8, bottom) == 2
    assert nilpotency_class(crisp("z4", "chain2", z4.names), bottom) == 1
    assert nilpotency_class(crisp("s3", "chain2", s3.names), bottom) is None
    with pytest.raises(TipEqualsTail):
        nilpotency_class(one_d8)


def test_commutator_of_d8(crisp, d8):
    one = crisp("d8", "chain2", d8.names)
    raw = commutator(one, one, one, "lsubset", one.lattice.bottom)
    assert {d8.names[x] for x, v in enumerate(raw.values) if v == one.lattice.top} == {"e", "r2"}


def test_s4_example(s4_pair):
    eta, mu = s4_pair
    assert is_lsubgroup(mu).verdict
    assert is_lsubgroup_of(eta, mu)
    assert is_normal("in-lgroup", eta, mu)
    assert nilpotency_class(mu) == 2
    chain = central_chain(mu)
    assert chain.reached_trivial
    assert chain.stages[-1] == trivial_lsubgroup(mu)


def test_s4_commutator_values(s4_pair):
    _, mu = s4_pair
    group, lattice = mu.group, mu.lattice
    raw = commutator(mu, mu, mu, "lsubset")
    v4 = {group.element(n) for n in ("e", "(12)(34)", "(13)(24)", "(14)(23)")}
    assert raw.values[group.element("(13)(24)")] == lattice.element("a1")
    assert raw.values[group.element("(12)(34)")] == lattice.element("b1")
    assert raw.values[group.element("(14)(23)")] == lattice.element("c1")
    assert all(raw.values[x] == lattice.element("f0") for x in group.elements if x not in v4)


def test_membership_required(d8_mu, loader):
    eta = loader.lsubset("d8_eta")
    with pytest.raises(NotAnLSubgroup):
        normalizer(eta, d8_mu)

import pytest

from models import EnumerationBudget
from services.lset import LPoint, constant, contains, make_lsubset, set_product
from services.maxfrat import (
    all_lsubgroups,
    all_maximal,
    coatoms_proper,
    enumerate_box,
    frattini,
    frattini_product_check,
    generating_points,
    is_maximal,
    is_nongenerator,
    maximal_condition_report,
    maximal_containing,
    zorn_witness,
)
from utils.errors import BudgetExceeded, NoWitness, PointNotInside


def crisp_z4(crisp, z4, members):
    return crisp("z4", "chain2", [z4.names[x] for x in members])


def test_z4_on_two_chain(crisp, z4):
    one = crisp_z4(crisp, z4, z4.elements)
    half = crisp_z4(crisp, z4, [0, 2])
    assert len(all_lsubgroups(one)) == 4
    assert all_maximal(one) == [half]
    result = frattini(one, via="both")
    assert result.phi == half
    assert result.nongenerators == half
    assert result.agree
    report = maximal_condition_report(one)
    assert (report.count, report.longest_chain) == (4, 4)


def test_d8_box_and_lsubgroups(d8_mu):
    bottom = constant(d8_mu.group, d8_mu.lattice, "0")
    box = enumerate_box(bottom, d8_mu)
    assert box.box_size == 90
    assert box.complete
    assert len(box.members) == 30
    assert len(all_maximal(d8_mu)) == 2
    assert maximal_condition_report(d8_mu).longest_chain == 8


def test_d8_frattini(d8_mu):
    result = frattini(d8_mu, via="both")
    expected = {"e": "1", "r2": "a", "s": "a", "sr2": "a"}
    assert result.phi.describe() == {name: expected.get(name, "0") for name in d8_mu.group.names}
    assert result.contained
    assert result.agree
    assert result.nongenerators == result.phi


def test_d8_generating_points(d8_mu):
    gens = generating_points(d8_mu, k_max=3)
    assert gens.complete
    assert gens.minimum is not None
    assert len(gens.minimum) == 2


def test_s4_maximality(s4_pair):
    eta, mu = s4_pair
    cert = is_maximal(eta, mu)
    assert cert.verdict
    assert (cert.box_size, cert.survivors) == (16, 2)


def test_improper_is_not_maximal(d8_mu):
    cert = is_maximal(d8_mu, d8_mu)
    assert not cert.verdict
    assert "proper" in cert.reason


def test_s3_frattini_is_trivial(crisp, s3):
    one = crisp("s3", "chain2", s3.names)
    assert frattini(one).phi == crisp("s3", "chain2", ["e"])
    assert coatoms_proper(one, all_lsubgroups(one))


def test_nongenerators(d8_mu, d8, l3):
    e = l3.index
    assert is_nongenerator(LPoint(d8.element("r2"), e["a"]), d8_mu)
    assert not is_nongenerator(LPoint(d8.element("r2"), e["b"]), d8_mu)
    with pytest.raises(PointNotInside):
        is_nongenerator(LPoint(d8.element("r"), e["a"]), d8_mu)


def test_frattini_product(d8_mu):
    phi = frattini(d8_mu).phi
    assert frattini_product_check(d8_mu, d8_mu)
    assert not frattini_product_check(phi, d8_mu)


def test_frattini_product_below_the_tip(loader, s3):
    chain4 = loader.lattice("chain4")
    mu = make_lsubset(s3, chain4, {"e": "1", "(12)": "q"}, "0")
    phi = frattini(mu).phi
    assert phi == make_lsubset(s3, chain4, {"e": "q", "(12)": "p"}, "0")
    # mu ∘ Phi(mu) only reaches q at the identity
    assert set_product(mu, phi).values[s3.identity] == chain4.element("q")
    assert not frattini_product_check(mu, mu)
    assert not any(set_product(eta, phi) == mu for eta in all_lsubgroups(mu))


def test_zorn_and_maximal_containing(crisp, z4):
    one = crisp_z4(crisp, z4, z4.elements)
    trivial = crisp_z4(crisp, z4, [0])
    half = crisp_z4(crisp, z4, [0, 2])
    top = one.lattice.top
    assert zorn_witness(trivial, LPoint(1, top), one) == half
    with pytest.raises(NoWitness):
        zorn_witness(trivial, LPoint(0, top), one)
    assert maximal_containing(trivial, one) == half
    with pytest.raises(NoWitness):
        maximal_containing(one, one)


def test_zorn_witness_in_s3(crisp, s3):
    one = crisp("s3", "chain2", s3.names)
    trivial = crisp("s3", "chain2", ["e"])
    p = LPoint(s3.element("(123)"), one.lattice.top)
    reflections = [crisp("s3", "chain2", ["e", t]) for t in ("(12)", "(13)", "(23)")]

    witness = zorn_witness(trivial, p, one)
    assert witness in reflections
    assert witness == min(reflections, key=lambda m: m.sort_key())
    assert not p.inside(witness)
    for m in all_lsubgroups(one):
        if contains(m, witness) and m != witness:
            assert p.inside(m)


def test_budget_exhaustion(d8_mu):
    with pytest.raises(BudgetExceeded) as err:
        all_lsubgroups(d8_mu, EnumerationBudget(max_candidates=3, max_results=3))
    assert err.value.exit_code == 3

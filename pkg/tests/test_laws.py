from hypothesis import given, settings
from hypothesis import strategies as st

from services.group import inner_automorphism
from services.lgroup import generated, is_lsubgroup
from services.lset import LSubset, contains, intersection, reconstruct, set_product, transport, union
from utils.fixtures import FixtureLoader

LOADER = FixtureLoader()
CARRIERS = [
    (LOADER.group("d8"), LOADER.lattice("l3")),
    (LOADER.group("z6"), LOADER.lattice("square")),
    (LOADER.group("s3"), LOADER.lattice("chain3")),
]


@st.composite
def lsubsets(draw, count=1, carrier=None):
    group, lattice = draw(st.sampled_from(CARRIERS)) if carrier is None else carrier
    values = st.lists(st.integers(0, len(lattice) - 1), min_size=group.order, max_size=group.order)
    subsets = [LSubset(group, lattice, tuple(draw(values))) for _ in range(count)]
    return subsets if count > 1 else subsets[0]


@given(lsubsets(count=3))
def test_union_and_intersection_laws(triple):
    mu, eta, theta = triple
    assert union(mu, eta) == union(eta, mu)
    assert intersection(mu, union(mu, eta)) == mu
    assert intersection(mu, union(eta, theta)) == union(intersection(mu, eta), intersection(mu, theta))


@given(lsubsets(count=2))
def test_containment_matches_union(pair):
    mu, eta = pair
    assert contains(mu, eta) == (union(mu, eta) == mu)


@given(lsubsets())
def test_reconstruct_is_identity(mu):
    assert reconstruct(mu) == mu


@given(lsubsets(count=3))
@settings(max_examples=50)
def test_set_product_is_associative(triple):
    mu, eta, theta = triple
    assert set_product(set_product(mu, eta), theta) == set_product(mu, set_product(eta, theta))


@given(lsubsets())
def test_pointwise_and_level_checks_agree(mu):
    assert is_lsubgroup(mu).verdict == is_lsubgroup(mu, "levels").verdict


@given(lsubsets(count=2))
@settings(max_examples=50)
def test_generation_is_a_closure(pair):
    eta, theta = pair
    gen = generated(eta)
    assert is_lsubgroup(gen).verdict
    assert contains(gen, eta)
    assert generated(gen) == gen
    assert contains(generated(union(eta, theta)), gen)


@given(lsubsets(count=2), st.data())
def test_inner_automorphisms_respect_the_adjunction(pair, data):
    mu, nu = pair
    f = inner_automorphism(mu.group, data.draw(st.integers(0, mu.group.order - 1)))
    assert contains(nu, transport(f, "image", mu)) == contains(transport(f, "preimage", nu), mu)
    assert transport(f, "preimage", transport(f, "image", mu)) == mu

import pytest

from services.lattice import build_lattice, chain_lattice, interval_sublattice, product_lattice
from utils.errors import InputError, LatticeTooLarge, NotComparable, OrderCycle, UnknownElement


def test_chain2_is_distributive_chain(chain2):
    assert chain2.distributive
    assert chain2.is_chain
    assert chain2.elements[chain2.bottom] == "0"
    assert chain2.elements[chain2.top] == "1"


def test_l3_meets_and_joins(l3):
    e = l3.index
    assert l3.join(e["b"], e["c"]) == e["1"]
    assert l3.meet(e["b"], e["c"]) == e["a"]
    assert l3.distributive
    assert not l3.is_chain
    assert len(l3.covers()) == 5


def test_m3_reports_witness(loader):
    m3 = loader.lattice("m3")
    ok, witness = m3.is_distributive()
    assert not ok
    x, y, z = (m3.index[w] for w in witness)
    assert m3.meet(x, m3.join(y, z)) != m3.join(m3.meet(x, y), m3.meet(x, z))


def test_down_set_and_interval(l3):
    e = l3.index
    assert set(l3.down_set(e["b"])) == {e["0"], e["a"], e["b"]}
    with pytest.raises(NotComparable):
        l3.interval(e["b"], e["c"])


def test_order_is_closed_transitively():
    lattice = build_lattice("c4", ["0", "1", "2", "3"], [("0", "1"), ("1", "2"), ("2", "3")])
    assert lattice.leq(0, 3)
    assert lattice.is_chain


def test_order_cycle_rejected():
    with pytest.raises(OrderCycle):
        build_lattice("bad", ["x", "y"], [("x", "y"), ("y", "x")])


def test_missing_bounds_rejected():
    # two minimal elements below two maximal ones: neither pair has a least upper bound
    with pytest.raises(InputError):
        build_lattice("bowtie", ["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def test_unknown_element_in_pair():
    with pytest.raises(UnknownElement):
        build_lattice("bad", ["0", "1"], [("0", "2")])


def test_size_limits():
    with pytest.raises(LatticeTooLarge):
        build_lattice("empty", [], [])
    with pytest.raises(LatticeTooLarge):
        chain_lattice(65)


def test_product_and_interval(chain2, l3):
    square = product_lattice(chain2, chain2)
    assert len(square) == 4
    assert square.distributive
    assert not square.is_chain
    upper = interval_sublattice(l3, l3.index["a"], l3.index["1"])
    assert len(upper) == 4
    assert upper.elements[upper.bottom] == "a"


def test_element_lookup(l3):
    assert l3.element("b") == l3.index["b"]
    assert l3.element(0) == 0
    with pytest.raises(UnknownElement):
        l3.element("z")
    with pytest.raises(UnknownElement):
        l3.element(99)

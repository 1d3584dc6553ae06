from services.reconstruction import TARGET_SIZE, check_constraints, search_reconstructions


def test_shipped_lattice_meets_constraints(loader):
    lattice = loader.lattice("s4_lattice")
    assert len(lattice) == TARGET_SIZE
    assert lattice.distributive
    assert check_constraints(lattice) == []


def test_other_lattices_are_rejected(l3):
    failed = check_constraints(l3)
    assert "missing element u1" in failed


def test_small_posets_cannot_reach_fourteen():
    # three join-irreducibles give at most eight down-sets
    result = search_reconstructions(max_points=3)
    assert result.posets_examined == 0
    assert not result.satisfiable

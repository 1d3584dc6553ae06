import pytest

from services.lset import characteristic
from utils.fixtures import FixtureLoader


@pytest.fixture(scope="session")
def loader():
    return FixtureLoader()


@pytest.fixture(scope="session")
def l3(loader):
    return loader.lattice("l3")


@pytest.fixture(scope="session")
def chain2(loader):
    return loader.lattice("chain2")


@pytest.fixture(scope="session")
def d8(loader):
    return loader.group("d8")


@pytest.fixture(scope="session")
def z4(loader):
    return loader.group("z4")


@pytest.fixture(scope="session")
def s3(loader):
    return loader.group("s3")


@pytest.fixture(scope="session")
def d8_mu(loader):
    return loader.lsubset("d8_mu")


@pytest.fixture(scope="session")
def s4_pair(loader):
    return loader.lsubset_pair("s4_eta", "s4_mu")


@pytest.fixture
def crisp(loader):
    """characteristic function of a subgroup given by element names"""

    def build(group_ref, lattice_ref, names):
        group = loader.group(group_ref)
        lattice = loader.lattice(lattice_ref)
        return characteristic(group, lattice, [group.element(n) for n in names])

    return build

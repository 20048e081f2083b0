import pytest

from riesz.core.cover import functional_representation
from riesz.core.zoo import make_classic, make_example10, make_example13, make_example14


@pytest.fixture(scope="session")
def lattice2():
    return make_classic("simplicial", {"n": 2})


@pytest.fixture(scope="session")
def lattice2_rep(lattice2):
    return functional_representation(lattice2)


@pytest.fixture(scope="session")
def four_ray():
    return make_classic("four_ray")


@pytest.fixture(scope="session")
def four_ray_rep(four_ray):
    return functional_representation(four_ray)


@pytest.fixture(scope="session")
def example14():
    return make_example14(3)


@pytest.fixture(scope="session")
def example14_rep(example14):
    return functional_representation(example14)


@pytest.fixture(scope="session")
def example13():
    return make_example13(4)


@pytest.fixture(scope="session")
def example13_rep(example13):
    return functional_representation(example13)


@pytest.fixture(scope="session")
def example10():
    return make_example10(4, 4)


@pytest.fixture(scope="session")
def example10_rep(example10):
    return functional_representation(example10)

import pytest

import corpus
from coxring import irrelevant_components
from freemod import cyclic_presentation, minimal_free_resolution, vres_of_pair


@pytest.fixture(scope="session")
def p1():
    return corpus.ring("p1")


@pytest.fixture(scope="session")
def p2():
    return corpus.ring("p2")


@pytest.fixture(scope="session")
def p1p1():
    return corpus.ring("p1p1")


@pytest.fixture(scope="session")
def p1p2():
    return corpus.ring("p1p2")


@pytest.fixture(scope="session")
def four_points_resolution(p1p2):
    return minimal_free_resolution(cyclic_presentation(corpus.four_points(p1p2)))


@pytest.fixture(scope="session")
def four_points_vres(four_points_resolution):
    return vres_of_pair(four_points_resolution, (1, 1), [1, 2])


@pytest.fixture(scope="session")
def B_p1p2(p1p2):
    return irrelevant_components(p1p2)


@pytest.fixture(scope="session")
def B_p1p1(p1p1):
    return irrelevant_components(p1p1)

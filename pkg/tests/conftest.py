import pytest

from bigonlab.cayley import build_ball
from bigonlab.presentation import preset, symmetrize
from bigonlab.wordproblem import auto_strategy


@pytest.fixture(scope="session")
def z2():
    return symmetrize(preset("z2"))


@pytest.fixture(scope="session")
def f2():
    return symmetrize(preset("f2"))


@pytest.fixture(scope="session")
def surface():
    return symmetrize(preset("surface2"))


@pytest.fixture(scope="session")
def z2_strategy(z2):
    return auto_strategy(z2)


@pytest.fixture(scope="session")
def surface_strategy(surface):
    return auto_strategy(surface)


@pytest.fixture(scope="session")
def z2_ball9(z2, z2_strategy):
    return build_ball(z2, z2_strategy, 9)


@pytest.fixture(scope="session")
def z2_ball12(z2, z2_strategy):
    return build_ball(z2, z2_strategy, 12, core_radius=4)


@pytest.fixture(scope="session")
def surface_ball4(surface, surface_strategy):
    return build_ball(surface, surface_strategy, 4)

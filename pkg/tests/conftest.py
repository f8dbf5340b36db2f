import numpy as np
import pytest

from depcorr import load_example, pairwise_complete


@pytest.fixture(scope="session")
def mtcars():
    return load_example("mtcars")


@pytest.fixture(scope="session")
def mpg_hp(mtcars):
    ps = pairwise_complete(mtcars, "hp", "mpg")
    return ps.x, ps.y


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

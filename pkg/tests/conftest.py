import numpy as np
import pytest

from geamkit.presets import preset


@pytest.fixture(scope="session")
def mub2():
    return preset("mub", 2)


@pytest.fixture(scope="session")
def sic2():
    return preset("sic", 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

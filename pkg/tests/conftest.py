import numpy as np
import pytest

from qgraph import make_figure8, make_star


@pytest.fixture
def star3():
    return make_star([1.0, 1.0, 1.0])


@pytest.fixture
def fig8():
    return make_figure8(0.5, 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(0)

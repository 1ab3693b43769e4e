import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def max_abs(a):
    return float(np.abs(np.asarray(a)).max())

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def interior_points(rng, count=50, lo=0.02, hi=0.98):
    return lo + (hi - lo) * rng.random(count)

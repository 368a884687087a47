import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hyperkos.ball import random_points

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def config(seed: int, count: int, dimension: int, radius: float = 0.9) -> np.ndarray:
    return random_points(np.random.default_rng(seed), count, dimension, radius)


def model_triangle(a=0.5, x=0.3, b=0.4) -> np.ndarray:
    """``{(0, 0), (a, 0), (x, b)}``."""
    return np.array([[0, 0], [a, 0], [x, b]], dtype=complex)


ORTHO_RAYS = np.array([[0, 0, 0], [0.5, 0, 0], [0, 0.5, 0], [0, 0, 0.5]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)

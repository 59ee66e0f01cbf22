"""Shared test fixtures: canonical bodies and random-shape generators."""

import numpy as np

from convexfit.geometry import Polytope
from convexfit.rng import substream

# area 0.15, used by the rate and adaptive studies
TRIANGLE = Polytope([[0.2, 0.2], [0.8, 0.2], [0.5, 0.7]])

UNIT_SQUARE = Polytope([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def random_polygon(rng: np.random.Generator, k_min: int = 3, k_max: int = 8) -> Polytope:
    k = int(rng.integers(k_min, k_max + 1))
    return Polytope(rng.random((k, 2)))


def polygon_stream(seed: int):
    return substream(seed, 901)

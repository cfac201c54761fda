"""Shared hypothesis strategies and random generators for the test suite."""
import numpy as np
from hypothesis import strategies as st

from sdpi import AdmissiblePair, Channel, Distribution


def dirichlet(rng, n, floor=0.0):
    while True:
        v = rng.dirichlet(np.ones(n))
        if v.min() >= floor:
            return v


def random_pair(rng, n, m, floor=0.02):
    return AdmissiblePair(Distribution(dirichlet(rng, n, floor)), Channel(rng.dirichlet(np.ones(m), size=n)))


seeds = st.integers(min_value=0, max_value=2**32 - 1)
sizes = st.integers(min_value=2, max_value=5)


@st.composite
def positive_vectors(draw, n, floor=1e-3):
    raw = draw(st.lists(st.floats(min_value=floor, max_value=1.0), min_size=n, max_size=n))
    v = np.array(raw)
    return v / v.sum()


@st.composite
def pairs(draw, max_n=4, max_m=4):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(2, max_m))
    rng = np.random.default_rng(draw(seeds))
    return random_pair(rng, n, m)

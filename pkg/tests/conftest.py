import random

from hypothesis import HealthCheck, settings, strategies as st

from amoebas import Amoeba, Tree

import oracles

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def trees_st(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    if n <= 2:
        return Tree(n, tuple((i, i + 1) for i in range(n - 1)))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return oracles.prufer_tree(tuple(seq), n)


@st.composite
def amoebas_st(draw, max_n: int = 6, max_k: int = 3, min_k: int = 0):
    t = draw(trees_st(max_n=max_n))
    n = t.vertex_count
    mult = [0] * n
    k = draw(st.integers(min_k, max_k))
    for _ in range(k):
        mult[draw(st.integers(0, n - 1))] += 1
    return Amoeba(t, tuple(mult))


@st.composite
def seeds_st(draw):
    return draw(st.integers(0, 2**63 - 1))


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)

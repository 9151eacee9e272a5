import random

import pytest

from maxcover.graph import BipartiteGraph


def random_bipartite(rng: random.Random, n_max: int = 12,
                     m_max: int = 14, allow_empty_rows: bool = False):
    """Small random instance built straight from rng.sample, bypassing the
    package's generators so generator bugs cannot mask library bugs."""
    n = rng.randrange(1, n_max + 1)
    m = rng.randrange(1, m_max + 1)
    adjacency = []
    for _ in range(n):
        lo = 0 if allow_empty_rows else 1
        d = rng.randrange(lo, m + 1)
        adjacency.append(sorted(rng.sample(range(m), d)))
    return BipartiteGraph(n, m, adjacency)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)

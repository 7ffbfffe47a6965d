import random

import pytest

from toggle.graphs import Graph


def random_graph(rng: random.Random, n: int, p: float = 0.35) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240917)

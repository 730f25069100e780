import numpy as np
import pytest

from vqemaxcut.graphs import Graph


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def four_cycle():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def five_cycle():
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


def random_connected_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> Graph:
    """Test-local graph sampler, independent of the package generator."""
    while True:
        edges = [
            (u, v) for u in range(n - 1) for v in range(u + 1, n) if rng.random() < p
        ]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            return g

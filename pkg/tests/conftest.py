import pytest

from brokencircuits.graphs import Graph


def named_graph_corpus():
    """Small named graphs used across the polynomial tests."""
    return {
        "k1": Graph([0], []),
        "k2": Graph.complete(2),
        "k3": Graph.complete(3),
        "k4": Graph.complete(4),
        "k5": Graph.complete(5),
        "p2": Graph.path(2),
        "p3": Graph.path(3),
        "p4": Graph.path(4),
        "p5": Graph.path(5),
        "p6": Graph.path(6),
        "c4": Graph.cycle(4),
        "c5": Graph.cycle(5),
        "c6": Graph.cycle(6),
        "star3": Graph.star(3),
        "star4": Graph.star(4),
        "k23": Graph.complete_bipartite(2, 3),
        "k33": Graph.complete_bipartite(3, 3),
        "k4_minus": Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]),
        "paw": Graph(range(4), [(0, 1), (0, 2), (1, 2), (2, 3)]),
        "bull": Graph(range(5), [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]),
        "bowtie": Graph(range(5), [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
        "two_triangles": Graph(range(6), [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]),
        "c4_pendant": Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]),
        "edgeless3": Graph(range(3), []),
    }


@pytest.fixture(scope="session")
def corpus():
    return named_graph_corpus()

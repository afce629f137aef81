import pytest

from girthspan.graphs import Graph
from girthspan.labelcover import LabelCoverInstance
from girthspan.rng import Stream


def make_lc(a_count, b_count, sigma_a, sigma_b, edges):
    """edges: list of (a, b, pairs)."""
    return LabelCoverInstance(a_count, b_count, sigma_a, sigma_b, edges)


def xor_odd_4cycle():
    """C4 supergraph, binary alphabets, three equality relations and one
    inequality relation; optimum 3/4, minimum REP-cover 5."""
    eq = [(0, 0), (1, 1)]
    neq = [(0, 1), (1, 0)]
    return make_lc(2, 2, 2, 2, [
        (0, 0, eq), (0, 1, eq), (1, 0, eq), (1, 1, neq)])


def path_lc_tiny():
    """Supergraph a0-b0-a1-b1 (a path, so supergirth is infinite); five
    Min-Rep edges total.  Small enough for exhaustive spanner enumeration."""
    return make_lc(2, 2, 2, 2, [
        (0, 0, [(0, 0), (1, 1)]),
        (1, 0, [(0, 1)]),
        (1, 1, [(0, 0), (1, 0)]),
    ])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def random_graph(n, edge_prob, stream: Stream):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if stream.random() < edge_prob]
    return Graph(n, edges)


def random_tiny_lc(stream: Stream, a_count, b_count, sigma_a, sigma_b,
                   edge_prob=0.6, pair_prob=0.5):
    """Random instance with at least one superedge and nonempty relations."""
    while True:
        edges = []
        for a in range(a_count):
            for b in range(b_count):
                if stream.random() < edge_prob:
                    pairs = [(x, y) for x in range(sigma_a) for y in range(sigma_b)
                             if stream.random() < pair_prob]
                    if not pairs:
                        pairs = [(stream.randbelow(sigma_a), stream.randbelow(sigma_b))]
                    edges.append((a, b, pairs))
        if edges:
            return make_lc(a_count, b_count, sigma_a, sigma_b, edges)


@pytest.fixture
def xor_lc():
    return xor_odd_4cycle()


@pytest.fixture
def tiny_lc():
    return path_lc_tiny()

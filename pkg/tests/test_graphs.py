import math

import pytest
from hypothesis import given, settings, strategies as st

from girthspan.errors import InputError
from girthspan.graphs import (Graph, INFINITY, bfs_distances, edge_cycle_length,
                              girth, graph_sha256, is_bipartite, parse_graph_text,
                              write_graph_text)
from girthspan.rng import Stream

from conftest import complete_graph, cycle_graph, random_graph


def test_bfs_on_path():
    g = Graph(3, [(0, 1), (1, 2)])
    assert bfs_distances(g, 0) == [0, 1, 2]


def test_bfs_disconnected_vertex_is_infinite():
    g = Graph(3, [(0, 1)])
    d = bfs_distances(g, 0)
    assert d[2] == INFINITY


def test_bfs_cap_on_c6():
    g = cycle_graph(6)
    d = bfs_distances(g, 0, cap=2)
    finite = sorted(v for v in d if v != INFINITY)
    assert finite == [0, 1, 1, 2, 2]
    assert sum(1 for v in d if v == INFINITY) == 1


def test_bfs_source_out_of_range():
    with pytest.raises(InputError):
        bfs_distances(Graph(2, [(0, 1)]), 5)


def test_girth_examples():
    assert girth(cycle_graph(4)) == 4
    assert girth(Graph(4, [(0, 1), (1, 2), (1, 3)])) == INFINITY
    assert girth(complete_graph(4)) == 3
    assert girth(Graph(0, [])) == INFINITY


def test_edge_cycle_length_examples():
    c6 = cycle_graph(6)
    assert all(edge_cycle_length(c6, e) == 6 for e in range(6))
    tree = Graph(3, [(0, 1), (1, 2)])
    assert edge_cycle_length(tree, 0) == INFINITY
    k4 = complete_graph(4)
    assert all(edge_cycle_length(k4, e) == 3 for e in range(6))
    with pytest.raises(InputError):
        edge_cycle_length(c6, 99)


def test_is_bipartite_examples():
    assert is_bipartite(cycle_graph(4))[0]
    assert not is_bipartite(cycle_graph(5))[0]
    ok, colors = is_bipartite(Graph(3, []))
    assert ok and set(colors) == {0}


def test_bipartite_coloring_is_proper():
    g = random_graph(10, 0.3, Stream(5))
    ok, colors = is_bipartite(g)
    if ok:
        assert all(colors[u] != colors[v] for u, v in g.edges())


def test_constructor_rejections():
    with pytest.raises(InputError):
        Graph(3, [(0, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(2, [(0, 5)])


def test_edge_ids_are_canonical():
    g = Graph(4, [(2, 3), (1, 0), (0, 2)])
    assert list(g.edges()) == [(0, 1), (0, 2), (2, 3)]
    assert g.edge_id(3, 2) == 2
    assert g.edge_id(1, 2) is None


def test_girth_equals_min_edge_cycle_length_on_random_graphs():
    stream = Stream(2024)
    for _ in range(60):
        n = 3 + stream.randbelow(10)
        g = random_graph(n, 0.35, stream)
        per_edge = [edge_cycle_length(g, e) for e in range(g.edge_count)]
        expected = min(per_edge) if per_edge else INFINITY
        assert girth(g) == expected


def test_bipartite_girth_is_even_or_infinite():
    stream = Stream(77)
    for _ in range(40):
        g = random_graph(3 + stream.randbelow(10), 0.3, stream)
        if is_bipartite(g)[0]:
            got = girth(g)
            assert got == INFINITY or (got % 2 == 0 and got >= 4)


@given(st.integers(2, 9), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_bfs_distance_symmetry(n, seed):
    g = random_graph(n, 0.4, Stream(seed))
    for u in range(n):
        du = bfs_distances(g, u)
        for v in range(n):
            assert du[v] == bfs_distances(g, v)[u]


def test_graph_text_round_trip():
    g = Graph(5, [(0, 1), (0, 4), (2, 3)])
    text = write_graph_text(g)
    assert text.splitlines()[0] == "GRAPH v1"
    assert parse_graph_text(text) == g
    assert graph_sha256(g) == graph_sha256(parse_graph_text(text))


def test_graph_text_round_trip_empty():
    g = Graph(3, [])
    assert parse_graph_text(write_graph_text(g)) == g


@pytest.mark.parametrize("bad", [
    "GRAPH v2\nN 1 M 0\n",
    "GRAPH v1\nN 2 M 1\n1 0\n",          # not u < v
    "GRAPH v1\nN 2 M 1\n0 5\n",          # out of range
    "GRAPH v1\nN 3 M 2\n0 1\n0 1\n",     # duplicate
    "GRAPH v1\nN 3 M 2\n0 2\n0 1\n",     # unsorted
    "GRAPH v1\nN 3 M 2\n0 1\n",          # wrong count
    "GRAPH v1\nN 2 M 1\n0 0\n",          # self loop (fails u < v)
])
def test_graph_text_rejections(bad):
    with pytest.raises(InputError):
        parse_graph_text(bad)


def test_infinity_ordering():
    assert INFINITY > 10**9
    assert math.isinf(INFINITY)

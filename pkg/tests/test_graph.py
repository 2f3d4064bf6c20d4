import gzip

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scatterclub.generators import complete_graph, cycle_graph, path_graph, star_graph
from scatterclub.graph import (
    Graph,
    ParseError,
    bfs_distances,
    clustering_all,
    clustering_coefficient,
    format_edge_list,
    neighbors,
    parse_edge_list,
    read_edge_list,
)


@st.composite
def edge_lists(draw, max_n=12):
    n = draw(st.integers(2, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1, max_size=40))
    return n, pairs


def test_parse_path():
    g = parse_edge_list("a b\nb c")
    assert (g.n, g.m) == (3, 2)
    assert g.labels == ("a", "b", "c")
    assert neighbors(g, 1).tolist() == [0, 2]


def test_parse_collapses_self_loops_and_duplicates():
    g = parse_edge_list("1 1\n1 2\n2 1")
    assert (g.n, g.m) == (2, 1)


def test_parse_skips_comments_and_blank_lines():
    g = parse_edge_list("# comment\n% other\n\n0 1")
    assert (g.n, g.m) == (2, 1)


@pytest.mark.parametrize("text, lineno", [("0 1\n0 1 2", 2), ("# c\nfoo", 2), ("a b\n\nx y z w", 3)])
def test_parse_error_carries_line_number(text, lineno):
    with pytest.raises(ParseError) as err:
        parse_edge_list(text, source="f.txt")
    assert err.value.lineno == lineno
    assert str(err.value).startswith(f"f.txt:{lineno}:")


@pytest.mark.parametrize("text", ["", "# only comments\n%\n", "\n\n"])
def test_parse_empty(text):
    with pytest.raises(ParseError, match="no edges"):
        parse_edge_list(text)


def test_read_gz(tmp_path):
    p = tmp_path / "g.txt.gz"
    with gzip.open(p, "wt") as fh:
        fh.write("# FromNodeId\tToNodeId\n10\t20\n20\t30\n")
    g = read_edge_list(p)
    assert (g.n, g.m) == (3, 2)
    assert g.labels == ("10", "20", "30")


def test_serialization_order_and_roundtrip():
    g = parse_edge_list("c a\nb a\nc b")
    # ids: c=0, a=1, b=2; edges by (min,max) internal id
    assert format_edge_list(g) == "c a\nc b\na b\n"
    h = parse_edge_list(format_edge_list(g))
    assert h.labels == g.labels
    assert np.array_equal(h.edges(), g.edges())


@given(edge_lists())
@settings(max_examples=100, deadline=None)
def test_graph_invariants(data):
    n, pairs = data
    g = Graph.from_edges(n, pairs)
    expected = {(min(u, v), max(u, v)) for u, v in pairs if u != v}
    assert g.m == len(expected)
    assert {tuple(e) for e in g.edges().tolist()} == expected
    assert g.degrees.sum() == 2 * g.m
    for v in range(n):
        nb = g.neighbors(v).tolist()
        assert nb == sorted(set(nb))
        assert v not in nb
        for u in nb:
            assert v in g.neighbors(u).tolist()


def _labelled_edges(g):
    return {frozenset((g.labels[u], g.labels[v])) for u, v in g.edges().tolist()}


@given(edge_lists())
@settings(max_examples=60, deadline=None)
def test_reserialization_preserves_labelled_graph(data):
    n, pairs = data
    if all(u == v for u, v in pairs):
        return
    g = parse_edge_list("\n".join(f"v{u} v{v}" for u, v in pairs))
    h = parse_edge_list(format_edge_list(g))
    assert set(h.labels) == set(g.labels)
    assert _labelled_edges(h) == _labelled_edges(g)
    assert parse_edge_list(format_edge_list(h)).m == g.m


def test_neighbors():
    assert neighbors(path_graph(3), 1).tolist() == [0, 2]
    iso = Graph.from_edges(3, [(0, 1)])
    assert neighbors(iso, 2).tolist() == []
    assert neighbors(complete_graph(4), 2).tolist() == [0, 1, 3]
    with pytest.raises(IndexError):
        neighbors(iso, 3)


def test_bfs_distances():
    assert bfs_distances(path_graph(3), 0).tolist() == [0, 1, 2]
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    d = bfs_distances(two, 0)
    assert d[:2].tolist() == [0, 1] and np.isinf(d[2:]).all()
    assert sorted(bfs_distances(cycle_graph(5), 3).tolist()) == [0, 1, 1, 2, 2]


@given(edge_lists())
@settings(max_examples=60, deadline=None)
def test_bfs_edge_step_property(data):
    n, pairs = data
    g = Graph.from_edges(n, pairs)
    d = bfs_distances(g, 0)
    for u, w in g.edges().tolist():
        if np.isfinite(d[u]) or np.isfinite(d[w]):
            assert abs(d[u] - d[w]) <= 1


def test_clustering_coefficient():
    assert clustering_coefficient(complete_graph(4), 0) == 1.0
    assert clustering_coefficient(star_graph(3), 0) == 0.0
    # center 0 with neighbors 1,2,3 and a single edge 1-2: one triangle of three possible
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    assert clustering_coefficient(g, 0) == pytest.approx(1 / 3)
    assert clustering_coefficient(g, 3) == 0.0


@given(edge_lists())
@settings(max_examples=60, deadline=None)
def test_clustering_all_matches_pointwise(data):
    n, pairs = data
    g = Graph.from_edges(n, pairs)
    assert np.allclose(clustering_all(g), [clustering_coefficient(g, v) for v in range(n)])


def test_without_edges_keeps_vertex_set():
    g = complete_graph(4)
    h = g.without_edges([(1, 0), (2, 3)])
    assert h.n == 4 and h.m == 4
    assert not h.has_edge(0, 1) and not h.has_edge(3, 2)
    assert g.m == 6


def test_subgraph_mapping():
    g = path_graph(5)
    sub, back = g.subgraph([4, 2, 3])
    assert back.tolist() == [2, 3, 4]
    assert sub.edges().tolist() == [[0, 1], [1, 2]]
    assert sub.labels == ("2", "3", "4")


def test_arrays_are_read_only():
    g = path_graph(3)
    with pytest.raises(ValueError):
        g.indices[0] = 2

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import adjacency_sets, core_numbers_peeling
from scatterclub.cores import core_decompose, core_histogram_csv, high_core_vertices
from scatterclub.generators import clique_edges, complete_graph, path_graph
from scatterclub.graph import Graph


@st.composite
def small_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, chosen


K4_PENDANT = Graph.from_edges(5, clique_edges(range(4)) + [(0, 4)])


def test_examples():
    d = core_decompose(complete_graph(4))
    assert d.core_number.tolist() == [3, 3, 3, 3] and d.delta_max == 3
    assert core_decompose(path_graph(4)).core_number.tolist() == [1, 1, 1, 1]
    d = core_decompose(K4_PENDANT)
    assert d.core_number.tolist() == [3, 3, 3, 3, 1]


@given(small_graphs())
@settings(max_examples=150, deadline=None)
def test_matches_peeling_oracle(data):
    n, edges = data
    d = core_decompose(Graph.from_edges(n, edges))
    assert d.core_number.tolist() == core_numbers_peeling(n, adjacency_sets(n, edges))
    assert d.delta_max == max(d.core_number.tolist())


@given(small_graphs())
@settings(max_examples=60, deadline=None)
def test_core_structure(data):
    n, edges = data
    g = Graph.from_edges(n, edges)
    d = core_decompose(g)
    assert (d.core_number <= g.degrees).all()
    for c in range(d.delta_max + 1):
        members = np.flatnonzero(d.core_number >= c)
        sub, _ = g.subgraph(members)
        assert sub.n == 0 or sub.degrees.min() >= c
        assert set(np.flatnonzero(d.core_number >= c + 1)) <= set(members)


@given(small_graphs(), st.data())
@settings(max_examples=60, deadline=None)
def test_adding_edge_is_monotone(data, draw):
    n, edges = data
    missing = sorted(set((u, v) for u in range(n) for v in range(u + 1, n)) - set(edges))
    if not missing:
        return
    extra = draw.draw(st.sampled_from(missing))
    before = core_decompose(Graph.from_edges(n, edges)).core_number
    after = core_decompose(Graph.from_edges(n, edges + [extra])).core_number
    assert (after >= before).all()


def test_high_core_vertices():
    assert high_core_vertices(core_decompose(K4_PENDANT)).tolist() == [0, 1, 2, 3]
    assert high_core_vertices(core_decompose(complete_graph(4))).tolist() == [0, 1, 2, 3]
    # K6 (core 5) plus a 4-core ring hanging off it, plus a pendant path (core 1)
    edges = clique_edges(range(6)) + clique_edges(range(6, 11)) + [(0, 6), (11, 6), (12, 11)]
    d = core_decompose(Graph.from_edges(13, edges))
    assert d.delta_max == 5
    assert high_core_vertices(d).tolist() == [i for i in range(13) if d.core_number[i] >= 4]
    assert high_core_vertices(d).tolist() == list(range(11))


def test_high_core_degenerate():
    # delta_max = 1: every non-isolated vertex counts
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    assert high_core_vertices(core_decompose(g)).tolist() == [0, 1, 2]
    with pytest.raises(ValueError):
        high_core_vertices(core_decompose(Graph.from_edges(0, [])))
    with pytest.raises(ValueError):
        high_core_vertices(core_decompose(Graph.from_edges(3, [])))


def test_histogram_csv():
    text = core_histogram_csv(core_decompose(K4_PENDANT))
    assert text == "core_number,count\n1,1\n3,4\n"

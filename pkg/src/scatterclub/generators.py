"""Small synthetic graphs with a single or scattered rich club, for tests and demos."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph

__all__ = ["clique_edges", "single_club_toy", "scattered_club_toy", "path_graph", "cycle_graph", "star_graph", "complete_graph"]


def clique_edges(vertices) -> list[tuple[int, int]]:
    return list(combinations(vertices, 2))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, clique_edges(range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _grow_tree(edges, anchors, first_new, count, rng):
    """Attach ``count`` new vertices, each to a uniformly random earlier vertex."""
    pool = list(anchors)
    for v in range(first_new, first_new + count):
        edges.append((int(pool[rng.integers(len(pool))]), v))
        pool.append(v)


def single_club_toy(n: int = 100, core: int = 8, extra_edges: int = 5, seed: int = 0) -> Graph:
    """A ``K_core`` clique with a random recursive tree hanging off it.

    ``extra_edges`` chords are added between random periphery vertices, so
    the edge count can be matched against :func:`scattered_club_toy`.
    """
    rng = np.random.default_rng(seed)
    edges = clique_edges(range(core))
    _grow_tree(edges, range(core), core, n - core, rng)
    present = {tuple(sorted(e)) for e in edges}
    while extra_edges:
        u, v = sorted(int(x) for x in rng.choice(np.arange(core, n), size=2, replace=False))
        if (u, v) not in present:
            present.add((u, v))
            edges.append((u, v))
            extra_edges -= 1
    return Graph.from_edges(n, edges)


def scattered_club_toy(n: int = 100, clubs: int = 3, club_size: int = 6, path_length: int = 12, seed: int = 0) -> Graph:
    """``clubs`` cliques chained by paths of ``path_length`` inner vertices.

    The remaining vertices form random trees rooted at the clique vertices,
    so every clique is a local hub of its own region.
    """
    rng = np.random.default_rng(seed)
    edges = []
    heads = []
    for c in range(clubs):
        members = list(range(c * club_size, (c + 1) * club_size))
        heads.append(members)
        edges += clique_edges(members)
    nxt = clubs * club_size
    for c in range(clubs - 1):
        prev = heads[c][-1]
        for _ in range(path_length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, heads[c + 1][0]))
    rest = n - nxt
    if rest < 0:
        raise ValueError("n too small for the requested clubs and paths")
    per_club = [rest // clubs + (1 if c < rest % clubs else 0) for c in range(clubs)]
    for c in range(clubs):
        _grow_tree(edges, heads[c], nxt, per_club[c], rng)
        nxt += per_club[c]
    return Graph.from_edges(n, edges)

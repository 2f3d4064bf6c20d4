"""Immutable undirected graphs in CSR form, plus edge-list I/O and BFS helpers."""

from __future__ import annotations

import gzip
import io
from collections import deque
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

__all__ = [
    "Graph",
    "ParseError",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
    "write_edge_list",
    "neighbors",
    "bfs_distances",
    "clustering_coefficient",
    "clustering_all",
    "INF",
]

INF = np.inf

COMMENT_PREFIXES = ("#", "%")


class ParseError(ValueError):
    """Malformed edge-list input. ``lineno`` is 1-based, or None for whole-file errors."""

    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        self.lineno = lineno
        self.source = source
        self.message = message
        where = ""
        if source is not None:
            where = f"{source}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Simple undirected graph with dense vertex ids ``0..n-1``.

    Adjacency is stored as CSR arrays (``indptr``, ``indices``) with each
    neighbor list sorted ascending. ``labels[i]`` is the external id of
    vertex ``i``. Instances are never mutated; edge removal returns a new
    graph over the same vertex set.
    """

    __slots__ = ("indptr", "indices", "labels", "_label_index", "_edges")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, labels: Sequence[str]):
        self.indptr = _frozen(np.asarray(indptr, dtype=np.int64))
        self.indices = _frozen(np.asarray(indices, dtype=np.int64))
        self.labels = tuple(labels)
        if len(self.labels) != len(self.indptr) - 1:
            raise ValueError("label count does not match vertex count")
        self._label_index = None
        self._edges = None

    @classmethod
    def from_edges(cls, n: int, edges, labels: Sequence[str] | None = None) -> "Graph":
        """Build a graph on ``n`` vertices from an iterable of ``(u, v)`` pairs.

        Self-loops are dropped and duplicates (in either orientation) collapse.
        """
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        e = e[e[:, 0] != e[:, 1]]
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        und = np.unique(np.stack([lo, hi], axis=1), axis=0) if len(e) else np.empty((0, 2), np.int64)
        src = np.concatenate([und[:, 0], und[:, 1]])
        dst = np.concatenate([und[:, 1], und[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        if labels is None:
            labels = [str(i) for i in range(n)]
        g = cls(indptr, dst, labels)
        g._edges = _frozen(und)
        return g

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        self._check(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        self._check(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        if self._edges is None:
            src = np.repeat(np.arange(self.n), self.degrees)
            keep = src < self.indices
            self._edges = _frozen(np.stack([src[keep], self.indices[keep]], axis=1))
        return self._edges

    def index_of(self, label: str) -> int:
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        return self._label_index[label]

    def adjacency_matrix(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def subgraph(self, vertices) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on ``vertices``.

        Returns the subgraph and the array mapping its vertex ids back to ids
        in ``self`` (sorted ascending). Labels carry over.
        """
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        local = np.full(self.n, -1, dtype=np.int64)
        local[keep] = np.arange(len(keep))
        e = self.edges()
        mask = (local[e[:, 0]] >= 0) & (local[e[:, 1]] >= 0)
        sub_edges = local[e[mask]]
        sub = Graph.from_edges(len(keep), sub_edges, [self.labels[i] for i in keep])
        return sub, keep

    def without_edges(self, removed) -> "Graph":
        """Copy of the graph with the given ``(u, v)`` edges deleted; n is unchanged."""
        removed = np.asarray(removed, dtype=np.int64).reshape(-1, 2)
        e = self.edges()
        if not len(removed):
            return Graph.from_edges(self.n, e, self.labels)
        lo = np.minimum(removed[:, 0], removed[:, 1])
        hi = np.maximum(removed[:, 0], removed[:, 1])
        key = e[:, 0] * self.n + e[:, 1]
        drop = np.isin(key, lo * self.n + hi)
        return Graph.from_edges(self.n, e[~drop], self.labels)

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for graph with n={self.n}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text, source: str | None = None) -> Graph:
    """Parse a whitespace-separated edge list.

    ``text`` may be a string or any iterable of lines. Lines starting with
    ``#`` or ``%`` are comments; blank lines are skipped. External ids are
    numbered in order of first appearance.
    """
    lines: Iterable[str] = text.splitlines() if isinstance(text, str) else text
    index: dict[str, int] = {}
    labels: list[str] = []
    src: list[int] = []
    dst: list[int] = []
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s.startswith(COMMENT_PREFIXES):
            continue
        tokens = s.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 2 tokens, got {len(tokens)}", lineno, source)
        if tokens[0] == tokens[1]:
            # self-loops are dropped before numbering, so a vertex seen only in a loop never exists
            continue
        ids = []
        for tok in tokens:
            i = index.get(tok)
            if i is None:
                i = index[tok] = len(labels)
                labels.append(tok)
            ids.append(i)
        src.append(ids[0])
        dst.append(ids[1])
    if not src:
        raise ParseError("no edges", None, source)
    edges = np.stack([np.asarray(src, np.int64), np.asarray(dst, np.int64)], axis=1)
    return Graph.from_edges(len(labels), edges, labels)


def read_edge_list(path) -> Graph:
    """Read an edge-list file; ``.gz`` files are decompressed transparently."""
    path = Path(path)
    if path.suffix == ".gz":
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            return parse_edge_list(fh, source=str(path))
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, source=str(path))


def format_edge_list(g: Graph) -> str:
    buf = io.StringIO()
    for u, v in g.edges():
        buf.write(f"{g.labels[u]} {g.labels[v]}\n")
    return buf.getvalue()


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8")


def neighbors(g: Graph, v: int) -> np.ndarray:
    return g.neighbors(v)


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable vertices get ``inf``."""
    g._check(source)
    dist = np.full(g.n, INF)
    dist[source] = 0.0
    indptr, indices = g.indptr, g.indices
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in indices[indptr[u]:indptr[u + 1]]:
            if dist[w] == INF:
                dist[w] = du
                queue.append(w)
    return dist


def clustering_coefficient(g: Graph, v: int) -> float:
    """Local clustering coefficient of ``v`` (0 when deg(v) < 2)."""
    nb = g.neighbors(v)
    k = len(nb)
    if k < 2:
        return 0.0
    nbset = set(nb.tolist())
    links = sum(len(nbset.intersection(g.neighbors(u).tolist())) for u in nb)
    # each neighbor-neighbor edge was counted from both ends
    return links / (k * (k - 1))


def clustering_all(g: Graph) -> np.ndarray:
    """Local clustering coefficients of every vertex, via sparse ``A·A ∘ A``."""
    a = g.adjacency_matrix()
    closed = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel()
    deg = g.degrees.astype(np.float64)
    denom = deg * (deg - 1)
    out = np.zeros(g.n)
    ok = denom > 0
    out[ok] = closed[ok] / denom[ok]
    return out

"""Clusters around high-centrality vertices and their degree of scatteredness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .centrality import HighCentralitySet
from .graph import Graph

__all__ = [
    "ClusterSet",
    "ScatterednessReport",
    "build_clusters",
    "scatteredness",
    "cluster_report",
]


@dataclass(frozen=True)
class ClusterSet:
    clusters: tuple[np.ndarray, ...]
    hc_per_cluster: tuple[int, ...]
    hc_total: int

    @property
    def K(self) -> int:
        return len(self.clusters)


@dataclass(frozen=True)
class ScatterednessReport:
    ratios: tuple[float, ...]
    value: float

    @property
    def K(self) -> int:
        return len(self.ratios)


class _DisjointSet:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def build_clusters(g: Graph, hc: HighCentralitySet | Sequence[int]) -> ClusterSet:
    """Merge the closed neighborhoods of the high-centrality vertices until disjoint.

    Two neighborhoods end up in the same cluster iff they are linked by a
    chain of overlapping neighborhoods, so the result is the connected
    components of the overlap relation and does not depend on merge order.
    """
    hc_vertices = hc.vertices if isinstance(hc, HighCentralitySet) else np.unique(np.asarray(hc, dtype=np.int64))
    if len(hc_vertices) == 0:
        raise ValueError("high-centrality set is empty")
    ds = _DisjointSet()
    for v in hc_vertices.tolist():
        ds.find(v)
        for u in g.neighbors(v).tolist():
            ds.union(v, u)

    members: dict[int, list[int]] = {}
    for x in ds.parent:
        members.setdefault(ds.find(x), []).append(x)
    hc_count: dict[int, int] = {}
    for v in hc_vertices.tolist():
        r = ds.find(v)
        hc_count[r] = hc_count.get(r, 0) + 1

    groups = [(hc_count[r], np.array(sorted(vs), dtype=np.int64)) for r, vs in members.items()]
    groups.sort(key=lambda t: (-t[0], int(t[1][0])))
    return ClusterSet(
        clusters=tuple(c for _, c in groups),
        hc_per_cluster=tuple(h for h, _ in groups),
        hc_total=len(hc_vertices),
    )


def scatteredness(clusters: ClusterSet | Sequence[int]) -> ScatterednessReport:
    """Geometric mean of the ratios ``H_i / (H - H_1 - ... - H_{i-1})``.

    Accepts a :class:`ClusterSet` or a bare non-increasing sequence of
    per-cluster high-centrality counts. One cluster gives exactly 1.0.
    """
    dist = list(clusters.hc_per_cluster) if isinstance(clusters, ClusterSet) else [int(h) for h in clusters]
    if not dist:
        raise ValueError("no clusters")
    if any(h <= 0 for h in dist):
        raise ValueError("every cluster must contain at least one high-centrality vertex")
    if any(a < b for a, b in zip(dist, dist[1:])):
        raise ValueError("clusters must be ordered by high-centrality count, descending")
    remaining = sum(dist)
    ratios = []
    log_sum = 0.0
    for h in dist:
        ratios.append(h / remaining)
        log_sum += math.log(h) - math.log(remaining)
        remaining -= h
    return ScatterednessReport(tuple(ratios), math.exp(log_sum / len(dist)))


def cluster_report(g: Graph, cs: ClusterSet, rep: ScatterednessReport | None = None) -> dict:
    """JSON-ready summary: ``K``, ``distribution``, ``scatteredness``, ``clusters`` (labels)."""
    if rep is None:
        rep = scatteredness(cs)
    return {
        "K": cs.K,
        "distribution": list(cs.hc_per_cluster),
        "scatteredness": rep.value,
        "ratios": list(rep.ratios),
        "clusters": [[g.labels[v] for v in c.tolist()] for c in cs.clusters],
    }

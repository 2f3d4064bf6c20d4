"""k-core decomposition (bucket peeling) and high-core vertex selection."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = ["CoreDecomposition", "core_decompose", "high_core_vertices", "core_histogram_csv"]


@dataclass(frozen=True)
class CoreDecomposition:
    core_number: np.ndarray
    delta_max: int

    def histogram(self) -> dict[int, int]:
        values, counts = np.unique(self.core_number, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def core_decompose(g: Graph) -> CoreDecomposition:
    """Core numbers of all vertices in O(n + m).

    Vertices are kept in an array sorted by current degree with bucket start
    offsets, so each degree decrement is an O(1) swap.
    """
    n = g.n
    deg = g.degrees.tolist()
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    md = max(deg, default=0)

    bin_start = [0] * (md + 1)
    for d in deg:
        bin_start[d] += 1
    start = 0
    for d in range(md + 1):
        num = bin_start[d]
        bin_start[d] = start
        start += num
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bin_start[deg[v]]
        vert[pos[v]] = v
        bin_start[deg[v]] += 1
    for d in range(md, 0, -1):
        bin_start[d] = bin_start[d - 1]
    bin_start[0] = 0

    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bin_start[du] += 1
                deg[u] = du - 1

    core = np.asarray(deg, dtype=np.int64)
    return CoreDecomposition(core, int(core.max()) if n else 0)


def high_core_vertices(d: CoreDecomposition) -> np.ndarray:
    """Vertices in the innermost or second-innermost core (core >= delta_max - 1).

    With ``delta_max == 1`` this is every non-isolated vertex.
    """
    if len(d.core_number) == 0:
        raise ValueError("empty graph has no cores")
    if d.delta_max < 1:
        raise ValueError("graph has no edges, so no non-trivial core")
    threshold = max(d.delta_max - 1, 1)
    return np.flatnonzero(d.core_number >= threshold)


def core_histogram_csv(d: CoreDecomposition) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["core_number", "count"])
    for c, cnt in d.histogram().items():
        w.writerow([c, cnt])
    return buf.getvalue()

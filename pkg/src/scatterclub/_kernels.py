"""Numba kernels for all-sources shortest-path sweeps.

Sources are striped over a fixed number of chunks and each chunk owns its
accumulator row, so results are bit-identical for any thread count.
"""

import os

import numba
import numpy as np
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the bundled TBB is too old for numba and only produces a warning
    numba.config.THREADING_LAYER = "workqueue"

N_CHUNKS = 64


@njit(cache=True)
def _bfs(indptr, indices, s, dist, sigma, order):
    """BFS from ``s`` filling dist/sigma; returns the number of visited vertices."""
    dist[s] = 0
    sigma[s] = 1.0
    order[0] = s
    head = 0
    tail = 1
    while head < tail:
        u = order[head]
        head += 1
        du = dist[u] + 1
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = du
                order[tail] = w
                tail += 1
            if dist[w] == du:
                sigma[w] += sigma[u]
    return tail


@njit(cache=True, parallel=True)
def closeness_sums(indptr, indices, n_chunks):
    n = len(indptr) - 1
    out = np.zeros(n)
    for c in prange(n_chunks):
        dist = np.full(n, -1, dtype=np.int64)
        sigma = np.zeros(n)
        order = np.empty(n, dtype=np.int64)
        for s in range(c, n, n_chunks):
            cnt = _bfs(indptr, indices, s, dist, sigma, order)
            acc = 0.0
            for i in range(1, cnt):
                acc += 1.0 / dist[order[i]]
            out[s] = acc
            for i in range(cnt):
                dist[order[i]] = -1
                sigma[order[i]] = 0.0
    return out


@njit(cache=True, parallel=True)
def pair_dependencies(indptr, indices, n_chunks):
    """Per-chunk sums over ordered sources of Brandes dependencies delta_s(v)."""
    n = len(indptr) - 1
    parts = np.zeros((n_chunks, n))
    for c in prange(n_chunks):
        dist = np.full(n, -1, dtype=np.int64)
        sigma = np.zeros(n)
        delta = np.zeros(n)
        order = np.empty(n, dtype=np.int64)
        row = parts[c]
        for s in range(c, n, n_chunks):
            cnt = _bfs(indptr, indices, s, dist, sigma, order)
            for i in range(cnt - 1, 0, -1):
                w = order[i]
                coeff = (1.0 + delta[w]) / sigma[w]
                dw = dist[w] - 1
                for j in range(indptr[w], indptr[w + 1]):
                    v = indices[j]
                    if dist[v] == dw:
                        delta[v] += sigma[v] * coeff
                row[w] += delta[w]
            for i in range(cnt):
                v = order[i]
                dist[v] = -1
                sigma[v] = 0.0
                delta[v] = 0.0
    return parts


@njit(cache=True, parallel=True)
def path_count_sums(indptr, indices, n_chunks):
    """Per-chunk sums of sigma_st(v) over ordered (s, t) and of sigma_st over s != t.

    Returns ``(through, total)`` where ``through[c, v]`` sums the number of
    shortest paths through v and ``total[c]`` the number of shortest paths.
    """
    n = len(indptr) - 1
    through = np.zeros((n_chunks, n))
    total = np.zeros(n_chunks)
    for c in prange(n_chunks):
        dist = np.full(n, -1, dtype=np.int64)
        sigma = np.zeros(n)
        below = np.zeros(n)
        order = np.empty(n, dtype=np.int64)
        row = through[c]
        tot = 0.0
        for s in range(c, n, n_chunks):
            cnt = _bfs(indptr, indices, s, dist, sigma, order)
            # below[v] = number of shortest-path DAG paths from v to any t != v
            for i in range(cnt - 1, 0, -1):
                w = order[i]
                dw = dist[w] - 1
                for j in range(indptr[w], indptr[w + 1]):
                    v = indices[j]
                    if dist[v] == dw:
                        below[v] += 1.0 + below[w]
                row[w] += sigma[w] * below[w]
                tot += sigma[w]
            for i in range(cnt):
                v = order[i]
                dist[v] = -1
                sigma[v] = 0.0
                below[v] = 0.0
        total[c] = tot
    return through, total


def set_threads(threads):
    if threads is None:
        return
    numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))

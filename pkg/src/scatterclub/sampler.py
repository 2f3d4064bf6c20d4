"""Max-expansion snowball sampling and core-based prediction of high-centrality vertices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .centrality import HighCentralitySet
from .cores import core_decompose, high_core_vertices
from .graph import Graph, clustering_all

__all__ = [
    "SamplerConfig",
    "SampleState",
    "SnowballStep",
    "PredictionResult",
    "snowball_sample",
    "expansion_ratio",
    "pick_seed",
    "predict_high_centrality",
    "score_prediction",
    "sample_target",
]

SEED_STRATEGIES = ("random", "hd_hcc")


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def sample_target(n: int, fraction: float) -> int:
    """``ceil(fraction * n)``, robust to float noise like ``0.1 * 30``."""
    return max(1, math.ceil(round(fraction * n, 9)))


@dataclass(frozen=True)
class SamplerConfig:
    sample_fraction: float = 0.10
    max_runs: int = 40
    seed_strategy: str = "random"
    rng_seed: int = 0
    prediction_size: int = 40

    def __post_init__(self):
        if not 0 < self.sample_fraction <= 1:
            raise ValueError("sample_fraction must be in (0, 1]")
        if self.max_runs < 1:
            raise ValueError("max_runs must be >= 1")
        if self.seed_strategy not in SEED_STRATEGIES:
            raise ValueError(f"seed_strategy must be one of {SEED_STRATEGIES}")
        if self.prediction_size < 1:
            raise ValueError("prediction_size must be >= 1")


class _Buckets:
    """Frontier vertices grouped by gain; O(1) insert, remove and random pick."""

    def __init__(self):
        self.items: dict[int, list[int]] = {}
        self.slot: dict[int, int] = {}
        self.gain: dict[int, int] = {}
        self.top = -1

    def __len__(self):
        return len(self.gain)

    def insert(self, v: int, g: int) -> None:
        bucket = self.items.setdefault(g, [])
        self.slot[v] = len(bucket)
        bucket.append(v)
        self.gain[v] = g
        if g > self.top:
            self.top = g

    def remove(self, v: int) -> int:
        g = self.gain.pop(v)
        bucket = self.items[g]
        i = self.slot.pop(v)
        last = bucket.pop()
        if last != v:
            bucket[i] = last
            self.slot[last] = i
        return g

    def decrement(self, v: int) -> None:
        self.insert(v, self.remove(v) - 1)

    def pick_max(self, rng: np.random.Generator) -> tuple[int, int]:
        while not self.items.get(self.top):
            self.top -= 1
        bucket = self.items[self.top]
        v = bucket[int(rng.integers(len(bucket)))] if len(bucket) > 1 else bucket[0]
        return v, self.top


class SampleState:
    """Sampled set S, its outside neighborhood N(S), and the gain of every frontier vertex.

    ``gains[v] = |N(v) \\ (N(S) ∪ S)|`` is maintained incrementally: adding a
    vertex only touches the neighbors of vertices that become newly covered.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.order: list[int] = []
        self.in_sample = np.zeros(g.n, dtype=bool)
        self.covered = np.zeros(g.n, dtype=bool)
        self.frontier = _Buckets()
        self._indptr = g.indptr.tolist()
        self._indices = g.indices.tolist()

    @property
    def size(self) -> int:
        return len(self.order)

    @property
    def gains(self) -> dict[int, int]:
        return self.frontier.gain

    def _cover(self, u: int) -> None:
        self.covered[u] = True
        gain = self.frontier.gain
        for j in range(self._indptr[u], self._indptr[u + 1]):
            w = self._indices[j]
            if w in gain:
                self.frontier.decrement(w)

    def add(self, v: int) -> None:
        if self.in_sample[v]:
            raise ValueError(f"vertex {v} already sampled")
        if v in self.frontier.gain:
            self.frontier.remove(v)
        self.in_sample[v] = True
        self.order.append(v)
        if not self.covered[v]:
            self._cover(v)
        covered = self.covered
        for j in range(self._indptr[v], self._indptr[v + 1]):
            u = self._indices[j]
            if not covered[u]:
                self._cover(u)
                fresh = 0
                for k in range(self._indptr[u], self._indptr[u + 1]):
                    if not covered[self._indices[k]]:
                        fresh += 1
                self.frontier.insert(u, fresh)


class SnowballStep(NamedTuple):
    vertex: int
    gain: int | None
    restart: bool


def snowball_sample(
    g: Graph,
    seed: int,
    target_size: int,
    rng=None,
    *,
    trace: list | None = None,
) -> np.ndarray:
    """Grow a sample from ``seed`` by repeatedly adding the frontier vertex
    that brings the most new neighbors, until ``target_size`` vertices.

    Gain ties are broken uniformly at random with ``rng``. If the seed's
    component runs out first, growth restarts from a random unsampled
    vertex. Returns the sampled vertices in insertion order. If ``trace``
    is a list, one :class:`SnowballStep` per added vertex is appended.
    """
    g._check(seed)
    if target_size < 1:
        raise ValueError("target_size must be >= 1")
    rng = _rng(rng)
    target = min(target_size, g.n)
    state = SampleState(g)
    state.add(seed)
    if trace is not None:
        trace.append(SnowballStep(seed, None, False))
    while state.size < target:
        if len(state.frontier):
            v, gain = state.frontier.pick_max(rng)
            restart = False
        else:
            v = int(rng.choice(np.flatnonzero(~state.in_sample)))
            gain, restart = None, True
        state.add(v)
        if trace is not None:
            trace.append(SnowballStep(v, gain, restart))
    return np.asarray(state.order, dtype=np.int64)


def expansion_ratio(g: Graph, S) -> float:
    """``|N(S)| / |S|`` where N(S) are the neighbors of S outside S."""
    S = np.unique(np.asarray(S, dtype=np.int64))
    if len(S) == 0:
        raise ValueError("S must be non-empty")
    inside = np.zeros(g.n, dtype=bool)
    inside[S] = True
    nb = np.concatenate([g.neighbors(v) for v in S])
    outside = np.unique(nb[~inside[nb]])
    return len(outside) / len(S)


def pick_seed(g: Graph, strategy: str, rng=None, exclude=None, clustering: np.ndarray | None = None) -> int:
    """Choose a sampling seed outside ``exclude``.

    ``random`` picks uniformly. ``hd_hcc`` takes the top decile of remaining
    vertices by degree and returns the one maximizing degree times local
    clustering coefficient (lowest index on ties).
    """
    available = np.ones(g.n, dtype=bool)
    if exclude is not None and len(exclude):
        available[np.asarray(list(exclude) if isinstance(exclude, (set, frozenset)) else exclude, dtype=np.int64)] = False
    cand = np.flatnonzero(available)
    if len(cand) == 0:
        raise ValueError("all vertices excluded; no seed available")
    if strategy == "random":
        return int(cand[_rng(rng).integers(len(cand))])
    if strategy != "hd_hcc":
        raise ValueError(f"unknown seed strategy {strategy!r}")
    deg = g.degrees[cand]
    by_degree = cand[np.lexsort((cand, -deg))]
    decile = by_degree[: math.ceil(len(cand) / 10)]
    cc = clustering if clustering is not None else clustering_all(g)
    score = g.degrees[decile] * cc[decile]
    best = decile[np.lexsort((decile, -score))]
    return int(best[0])


@dataclass
class PredictionResult:
    predicted: np.ndarray
    sampled_subgraphs: list[np.ndarray]
    runs: int
    probable: np.ndarray
    clusters_found: int
    precision: float | None = None
    recall: float | None = None
    config: SamplerConfig = field(default_factory=SamplerConfig)

    def to_dict(self, g: Graph, truth: HighCentralitySet | None = None) -> dict:
        out = {
            "config": {
                "sample_fraction": self.config.sample_fraction,
                "max_runs": self.config.max_runs,
                "seed_strategy": self.config.seed_strategy,
                "rng_seed": self.config.rng_seed,
                "prediction_size": self.config.prediction_size,
            },
            "runs": self.runs,
            "clusters_found": self.clusters_found,
            "precision": self.precision,
            "recall": self.recall,
            "predicted": [g.labels[v] for v in self.predicted.tolist()],
            "probable": [g.labels[v] for v in self.probable.tolist()],
            "samples": [[g.labels[v] for v in s.tolist()] for s in self.sampled_subgraphs],
        }
        if truth is not None:
            out["hcn"] = len(truth)
            out["truth"] = [g.labels[v] for v in truth.vertices.tolist()]
        return out


def score_prediction(predicted, truth: HighCentralitySet | set | np.ndarray) -> tuple[float, float]:
    """Precision and recall of ``predicted`` against ``truth``."""
    pred = {int(v) for v in np.asarray(list(predicted) if isinstance(predicted, (set, frozenset)) else predicted).ravel()}
    if isinstance(truth, HighCentralitySet):
        true = set(truth.sources)
    else:
        true = {int(v) for v in (truth if isinstance(truth, (set, frozenset)) else np.asarray(truth).ravel())}
    if not true:
        raise ValueError("ground truth is empty")
    if not pred:
        raise ValueError("prediction is empty")
    hit = len(pred & true)
    return hit / len(pred), hit / len(true)


def _components(n_local: int, edges: np.ndarray) -> int:
    parent = list(range(n_local))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n_local
    for a, b in edges.tolist():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def predict_high_centrality(
    g: Graph, cfg: SamplerConfig | None = None, truth: HighCentralitySet | None = None
) -> PredictionResult:
    """Predict high-centrality vertices from repeated snowball samples.

    Each run samples ``ceil(sample_fraction * n)`` vertices, core-decomposes
    the induced subgraph and adds its innermost and second-innermost core
    to the probable set. Runs stop when the probable set stops changing or
    after ``max_runs``. The first seed follows ``seed_strategy``; later
    seeds are drawn uniformly from vertices outside every previous sample.
    The prediction is the ``prediction_size`` probable vertices of highest
    degree in the union of the sampled subgraphs.
    """
    cfg = cfg or SamplerConfig()
    if g.n < 10:
        raise ValueError(f"n >= 10 required for sampling (got n={g.n})")
    rng = np.random.default_rng(cfg.rng_seed)
    target = sample_target(g.n, cfg.sample_fraction)

    ever_sampled = np.zeros(g.n, dtype=bool)
    probable = np.zeros(g.n, dtype=bool)
    union_edges: set[tuple[int, int]] = set()
    samples: list[np.ndarray] = []
    runs = 0
    for run in range(cfg.max_runs):
        if run == 0:
            seed = pick_seed(g, cfg.seed_strategy, rng)
        else:
            rest = np.flatnonzero(~ever_sampled)
            if len(rest) == 0:
                break
            seed = int(rest[rng.integers(len(rest))])
        S = snowball_sample(g, seed, target, rng)
        runs += 1
        samples.append(S)
        ever_sampled[S] = True
        sub, back = g.subgraph(S)
        union_edges.update(map(tuple, back[sub.edges()].tolist()))
        before = probable.copy()
        if sub.m:
            probable[back[high_core_vertices(core_decompose(sub))]] = True
        if run > 0 and np.array_equal(before, probable):
            break

    prob_idx = np.flatnonzero(probable)
    ue = np.array(sorted(union_edges), dtype=np.int64).reshape(-1, 2)
    union_deg = np.bincount(ue.ravel(), minlength=g.n)
    ranked = prob_idx[np.lexsort((prob_idx, -union_deg[prob_idx]))]
    predicted = np.sort(ranked[: cfg.prediction_size])

    local = np.full(g.n, -1, dtype=np.int64)
    local[prob_idx] = np.arange(len(prob_idx))
    keep = (local[ue[:, 0]] >= 0) & (local[ue[:, 1]] >= 0) if len(ue) else np.zeros(0, bool)
    clusters = _components(len(prob_idx), local[ue[keep]]) if len(prob_idx) else 0

    result = PredictionResult(predicted, samples, runs, prob_idx, clusters, config=cfg)
    if truth is not None and len(predicted):
        result.precision, result.recall = score_prediction(predicted, truth)
    return result

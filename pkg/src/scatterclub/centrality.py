"""Exact closeness and betweenness centrality, top-k ranking and the
unified high-centrality set."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import _kernels
from .graph import Graph

__all__ = [
    "CentralityScores",
    "RankedSet",
    "HighCentralitySet",
    "closeness_all",
    "betweenness_all",
    "top_k",
    "ground_truth",
    "scores_csv",
]

BetweennessVariant = Literal["per_pair", "paper_literal"]
BETWEENNESS_VARIANTS = ("per_pair", "paper_literal")


@dataclass(frozen=True)
class CentralityScores:
    kind: str
    scores: np.ndarray
    variant: str | None = None

    def __len__(self) -> int:
        return len(self.scores)


@dataclass(frozen=True)
class RankedSet:
    k: int
    members: tuple[int, ...]

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


@dataclass(frozen=True)
class HighCentralitySet:
    """Union of the top-k betweenness and top-k closeness vertices."""

    k: int
    betweenness: RankedSet
    closeness: RankedSet
    sources: dict[int, str] = field(default_factory=dict)

    @property
    def vertices(self) -> np.ndarray:
        return np.array(sorted(self.sources), dtype=np.int64)

    def __len__(self) -> int:
        return len(self.sources)

    def __contains__(self, v) -> bool:
        return int(v) in self.sources


def closeness_all(g: Graph, threads: int | None = None) -> CentralityScores:
    """Closeness ``CC(v) = 1/(n-1) * sum_{s != v} 1/dist(v, s)``.

    Unreachable vertices contribute zero, so disconnected graphs are fine.
    """
    if g.n < 2:
        raise ValueError("degenerate graph: closeness needs n >= 2")
    _kernels.set_threads(threads)
    sums = _kernels.closeness_sums(g.indptr, g.indices, _kernels.N_CHUNKS)
    return CentralityScores("closeness", sums / (g.n - 1))


def betweenness_all(
    g: Graph, variant: BetweennessVariant = "per_pair", threads: int | None = None
) -> CentralityScores:
    """Unnormalized betweenness.

    ``per_pair`` sums ``sigma_st(v) / sigma_st`` over unordered pairs
    (Brandes accumulation). ``paper_literal`` takes the global ratio
    ``sum sigma_st(v) / sum sigma_st``.
    """
    if variant not in BETWEENNESS_VARIANTS:
        raise ValueError(f"unknown betweenness variant {variant!r}")
    _kernels.set_threads(threads)
    if g.n == 0:
        return CentralityScores("betweenness", np.zeros(0), variant)
    if variant == "per_pair":
        parts = _kernels.pair_dependencies(g.indptr, g.indices, _kernels.N_CHUNKS)
        scores = parts.sum(axis=0) / 2.0
    else:
        through, total = _kernels.path_count_sums(g.indptr, g.indices, _kernels.N_CHUNKS)
        denom = total.sum()
        scores = through.sum(axis=0) / denom if denom > 0 else np.zeros(g.n)
    return CentralityScores("betweenness", scores, variant)


def top_k(scores: CentralityScores | np.ndarray, k: int) -> RankedSet:
    """Top-k vertices by score descending, index ascending on ties."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = scores.scores if isinstance(scores, CentralityScores) else np.asarray(scores)
    order = np.lexsort((np.arange(len(s)), -s))
    return RankedSet(k, tuple(int(v) for v in order[:k]))


def ground_truth(
    g: Graph,
    k: int = 20,
    variant: BetweennessVariant = "per_pair",
    threads: int | None = None,
) -> HighCentralitySet:
    bc = top_k(betweenness_all(g, variant, threads), k)
    cc = top_k(closeness_all(g, threads), k)
    return union_high_centrality(bc, cc)


def union_high_centrality(bc: RankedSet, cc: RankedSet) -> HighCentralitySet:
    sources: dict[int, str] = {}
    for v in bc.members:
        sources[v] = "bc"
    for v in cc.members:
        sources[v] = "both" if v in sources else "cc"
    return HighCentralitySet(bc.k, bc, cc, dict(sorted(sources.items())))


def scores_csv(g: Graph, scores: CentralityScores) -> str:
    """``vertex_label,score`` rows sorted by score descending (index ascending on ties)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vertex_label", "score"])
    for v in top_k(scores, max(1, g.n)).members:
        w.writerow([g.labels[v], repr(float(scores.scores[v]))])
    return buf.getvalue()

"""Sampling-based edge-removal attacks and Jaccard evaluation of top-k disruption."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .centrality import BETWEENNESS_VARIANTS, betweenness_all, closeness_all, top_k
from .cores import core_decompose, high_core_vertices
from .graph import Graph, clustering_all
from .sampler import SEED_STRATEGIES, pick_seed, sample_target, snowball_sample

__all__ = [
    "AttackConfig",
    "AttackReport",
    "TrialRecord",
    "candidate_edges",
    "run_attack",
    "jaccard",
]

CENTRALITY_KINDS = ("betweenness", "closeness")


def jaccard(a, b) -> float:
    a, b = set(a), set(b)
    union = a | b
    if not union:
        raise ValueError("jaccard of two empty sets is undefined")
    return len(a & b) / len(union)


def _criterion(c) -> str:
    c = str(c).lower()
    if c in ("1", "one"):
        return "one"
    if c in ("2", "two"):
        return "two"
    raise ValueError(f"criterion must be 'one' or 'two', got {c!r}")


def candidate_edges(g: Graph, sample, criterion="one") -> np.ndarray:
    """Edges of the subgraph induced by ``sample`` that touch its high cores.

    Criterion ``one`` keeps edges with at least one high-core endpoint,
    ``two`` only those with both. High-core means core number >= delta_max - 1
    within the sampled subgraph. Returned as ``(u, v)`` rows, ``u < v``,
    in lexicographic order.
    """
    criterion = _criterion(criterion)
    sample = np.asarray(sample, dtype=np.int64)
    if len(sample) == 0:
        raise ValueError("sample is empty")
    sub, back = g.subgraph(sample)
    if sub.m == 0:
        return np.empty((0, 2), dtype=np.int64)
    high = np.zeros(sub.n, dtype=bool)
    high[high_core_vertices(core_decompose(sub))] = True
    e = sub.edges()
    hits = high[e[:, 0]].astype(int) + high[e[:, 1]]
    keep = hits >= (1 if criterion == "one" else 2)
    out = back[e[keep]]
    # back is sorted, so local u < v maps to global u < v
    return out[np.lexsort((out[:, 1], out[:, 0]))]


@dataclass(frozen=True)
class AttackConfig:
    criterion: str = "one"
    percentages: tuple[float, ...] = (0.02, 0.04, 0.06, 0.08)
    trials: int = 5
    seed_strategy: str = "hd_hcc"
    sample_fraction: float = 0.10
    rng_seed: int = 0
    k: int = 20
    betweenness_variant: str = "per_pair"

    def __post_init__(self):
        object.__setattr__(self, "criterion", _criterion(self.criterion))
        object.__setattr__(self, "percentages", tuple(float(p) for p in self.percentages))
        p = self.percentages
        if not p:
            raise ValueError("at least one percentage is required")
        if any(not 0 <= x < 1 for x in p):
            raise ValueError("percentages must lie in [0, 1)")
        if any(b <= a for a, b in zip(p, p[1:])):
            raise ValueError("percentages must be strictly increasing")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.seed_strategy not in SEED_STRATEGIES:
            raise ValueError(f"seed_strategy must be one of {SEED_STRATEGIES}")
        if not 0 < self.sample_fraction <= 1:
            raise ValueError("sample_fraction must be in (0, 1]")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.betweenness_variant not in BETWEENNESS_VARIANTS:
            raise ValueError(f"betweenness_variant must be one of {BETWEENNESS_VARIANTS}")


@dataclass
class TrialRecord:
    trial: int
    seed_vertex: int
    sample: np.ndarray
    removed: np.ndarray
    fallback_used: bool
    # per percentage level
    edges_removed: list[int] = field(default_factory=list)
    exhausted: list[bool] = field(default_factory=list)
    fallback_at: list[bool] = field(default_factory=list)
    jaccard: dict[str, list[float]] = field(default_factory=lambda: {k: [] for k in CENTRALITY_KINDS})


@dataclass
class AttackReport:
    config: AttackConfig
    m_original: int
    trials: list[TrialRecord]
    dataset: str = ""

    def values(self, kind: str) -> np.ndarray:
        """``(trials, percentages)`` array of Jaccard indices for one centrality kind."""
        return np.array([t.jaccard[kind] for t in self.trials])

    def mean(self, kind: str) -> np.ndarray:
        return self.values(kind).mean(axis=0)

    def std(self, kind: str) -> np.ndarray:
        return self.values(kind).std(axis=0)

    def long_rows(self) -> list[dict]:
        rows = []
        for t in self.trials:
            for i, p in enumerate(self.config.percentages):
                for kind in CENTRALITY_KINDS:
                    rows.append({
                        "dataset": self.dataset,
                        "criterion": self.config.criterion,
                        "seed_strategy": self.config.seed_strategy,
                        "trial": t.trial,
                        "percentage": p,
                        "centrality": kind,
                        "jaccard": t.jaccard[kind][i],
                        "edges_removed": t.edges_removed[i],
                        "fallback": t.fallback_at[i],
                        "exhausted": t.exhausted[i],
                    })
        return rows

    def summary_rows(self) -> list[dict]:
        rows = []
        for kind in CENTRALITY_KINDS:
            mean, std = self.mean(kind), self.std(kind)
            for i, p in enumerate(self.config.percentages):
                rows.append({
                    "percentage": p,
                    "centrality": kind,
                    "mean": float(mean[i]),
                    "std": float(std[i]),
                    "trials": len(self.trials),
                })
        return rows

    def to_dict(self, g: Graph | None = None) -> dict:
        label = (lambda v: g.labels[v]) if g is not None else int
        return {
            "dataset": self.dataset,
            "config": asdict(self.config),
            "m_original": self.m_original,
            "trials": [
                {
                    "trial": t.trial,
                    "seed_vertex": label(t.seed_vertex),
                    "sample_size": len(t.sample),
                    "fallback_used": t.fallback_used,
                    "edges_removed": t.edges_removed,
                    "exhausted": t.exhausted,
                    "jaccard": t.jaccard,
                    "removed_edges": [[label(u), label(v)] for u, v in t.removed.tolist()],
                }
                for t in self.trials
            ],
            "summary": self.summary_rows(),
        }


def _to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def long_csv(report: AttackReport) -> str:
    return _to_csv(report.long_rows())


def summary_csv(report: AttackReport) -> str:
    return _to_csv(report.summary_rows())


def _top_sets(g: Graph, cfg: AttackConfig, threads) -> dict[str, frozenset]:
    return {
        "betweenness": top_k(betweenness_all(g, cfg.betweenness_variant, threads), cfg.k).as_set(),
        "closeness": top_k(closeness_all(g, threads), cfg.k).as_set(),
    }


def run_attack(g: Graph, cfg: AttackConfig | None = None, threads: int | None = None, dataset: str = "") -> AttackReport:
    """Remove sampled high-core edges in a cumulative percentage schedule.

    Per trial: snowball-sample ``ceil(sample_fraction * n)`` vertices from a
    seed chosen by ``seed_strategy``, shuffle the criterion's candidate
    edges, then for each percentage p remove edges until ``floor(p * m)``
    are gone (m of the original graph). Criterion ``two`` falls back to
    shuffled criterion-``one`` candidates once its own run out; when those
    run out too the level is flagged exhausted. After each level the top-k
    betweenness and closeness sets are recomputed and compared with the
    originals by Jaccard index.
    """
    cfg = cfg or AttackConfig()
    if g.m < 50:
        raise ValueError(f"attack needs m >= 50 edges (got m={g.m})")
    original = _top_sets(g, cfg, threads)
    target = sample_target(g.n, cfg.sample_fraction)
    cc = clustering_all(g) if cfg.seed_strategy == "hd_hcc" else None
    streams = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.trials)

    trials = []
    for t, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        seed = pick_seed(g, cfg.seed_strategy, rng, clustering=cc)
        sample = snowball_sample(g, seed, target, rng)
        primary = candidate_edges(g, sample, cfg.criterion)
        queue = primary[rng.permutation(len(primary))]
        n_primary = len(queue)
        if cfg.criterion == "two":
            ones = candidate_edges(g, sample, "one")
            key = primary[:, 0] * g.n + primary[:, 1]
            extra = ones[~np.isin(ones[:, 0] * g.n + ones[:, 1], key)]
            queue = np.concatenate([queue, extra[rng.permutation(len(extra))]])

        rec = TrialRecord(t, seed, sample, queue[:0], False)
        current = original
        taken = 0
        for p in cfg.percentages:
            want = math.floor(round(p * g.m, 9))
            now = min(want, len(queue))
            rec.exhausted.append(want > len(queue))
            if now != taken:
                taken = now
                current = _top_sets(g.without_edges(queue[:taken]), cfg, threads)
            rec.edges_removed.append(taken)
            rec.fallback_at.append(taken > n_primary)
            for kind in CENTRALITY_KINDS:
                rec.jaccard[kind].append(jaccard(original[kind], current[kind]))
        rec.removed = queue[:taken]
        rec.fallback_used = taken > n_primary
        trials.append(rec)
    return AttackReport(cfg, g.m, trials, dataset)

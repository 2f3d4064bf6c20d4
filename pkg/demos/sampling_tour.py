"""Finding high-centrality vertices from a few small snowball samples.

Run: python demos/sampling_tour.py
"""

from scatterclub import SamplerConfig, ground_truth, predict_high_centrality
from scatterclub.generators import single_club_toy

g = single_club_toy(n=400, core=10, extra_edges=20, seed=1)
truth = ground_truth(g, k=20)
print(f"graph: n={g.n} m={g.m}; ground truth has {len(truth)} vertices")

for strategy in ("random", "hd_hcc"):
    cfg = SamplerConfig(seed_strategy=strategy, rng_seed=0)
    res = predict_high_centrality(g, cfg, truth)
    touched = len(set().union(*(set(s.tolist()) for s in res.sampled_subgraphs)))
    print(f"{strategy:>7}: runs={res.runs} touched={touched}/{g.n} predicted={len(res.predicted)} "
          f"precision={res.precision:.2f} recall={res.recall:.2f}")

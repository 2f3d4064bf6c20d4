"""How clustering of high-centrality vertices turns into a single number.

Run: python demos/scatteredness_tour.py
"""

from scatterclub import build_clusters, ground_truth, scatteredness
from scatterclub.generators import scattered_club_toy, single_club_toy

for name, g in [("one dense core", single_club_toy(seed=0)), ("three bridged cliques", scattered_club_toy(seed=0))]:
    hc = ground_truth(g, k=20)
    clusters = build_clusters(g, hc)
    rep = scatteredness(clusters)
    print(f"{name:>22}: n={g.n} m={g.m} |hc|={len(hc)} clusters={clusters.K} "
          f"distribution={list(clusters.hc_per_cluster)} scatteredness={rep.value:.3f}")

# The value depends only on the per-cluster counts, so known distributions can be replayed directly.
for dist in [(24,), (37, 1, 1, 1), (20, 6, 3), (3,) + (2,) * 8 + (1,) * 17]:
    print(f"{str(dist[:5]) + ('...' if len(dist) > 5 else ''):>22}: {scatteredness(dist).value:.3f}")

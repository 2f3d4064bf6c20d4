"""Removing sampled core edges and watching the top-20 sets drift.

Run: python demos/attack_tour.py
"""

from scatterclub import AttackConfig, run_attack
from scatterclub.generators import scattered_club_toy, single_club_toy

cfg = AttackConfig(criterion="one", trials=5, rng_seed=0)
for name, g in [("single club", single_club_toy(seed=0)), ("scattered", scattered_club_toy(seed=0))]:
    rep = run_attack(g, cfg, dataset=name)
    print(name)
    for kind in ("betweenness", "closeness"):
        cells = "  ".join(f"{p:.0%}: {mu:.2f}+-{sd:.2f}" for p, mu, sd in zip(cfg.percentages, rep.mean(kind), rep.std(kind)))
        print(f"  {kind:>11}  {cells}")

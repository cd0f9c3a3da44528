"""Persistence of a noisy circle and how the top H1 bar degrades with noise.

    python scripts/circle_demo.py
"""

import numpy as np

from toporisk.diagram import lifetimes, persistence_entropy, total_persistence
from toporisk.embedding import PointCloud
from toporisk.homology import persistence_diagrams
from toporisk.rips import build_rips_filtration, pairwise_distances
from toporisk.risk import significant_cycles

rng = np.random.default_rng(0)
print(f"{'noise':>6} {'bars':>5} {'top':>8} {'second':>8} {'Lambda':>8} {'entropy':>8} {'>2*noise':>8}")
for noise in [0.0, 0.05, 0.1, 0.2, 0.4]:
    theta = rng.uniform(0, 2 * np.pi, 80)
    pts = np.column_stack([np.cos(theta), np.sin(theta)]) + noise * rng.standard_normal((80, 2))
    _, d1 = persistence_diagrams(build_rips_filtration(pairwise_distances(PointCloud(pts)), 2))
    lt = np.sort(lifetimes(d1).lifetimes)[::-1]
    second = lt[1] if len(lt) > 1 else 0.0
    print(
        f"{noise:6.2f} {len(lt):5d} {lt[0]:8.4f} {second:8.4f} {total_persistence(lt):8.4f} "
        f"{persistence_entropy(lt):8.4f} {significant_cycles(d1, noise):8d}"
    )

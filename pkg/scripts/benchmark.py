"""Time each pipeline stage on synthetic returns for growing point counts.

    python scripts/benchmark.py 100 200 300 400
"""

import sys
import time

import numpy as np

from toporisk.embedding import EmbeddingConfig, delay_embed
from toporisk.homology import build_boundary_matrix, extract_diagrams, reduce
from toporisk.ingest import SeriesKind, TimeSeries, zscore_normalize
from toporisk.rips import build_rips_filtration, pairwise_distances


def run(n, seed=0):
    rng = np.random.default_rng(seed)
    r = TimeSeries(0.02 * np.sin(np.arange(n + 4) / 5) + 0.01 * rng.standard_normal(n + 4), SeriesKind.LOG_RETURN)
    cloud = delay_embed(zscore_normalize(r), EmbeddingConfig(5, 1))
    times = {}
    t = time.perf_counter()
    filt = build_rips_filtration(pairwise_distances(cloud), 2)
    times["rips"] = time.perf_counter() - t
    t = time.perf_counter()
    bm = build_boundary_matrix(filt)
    times["boundary"] = time.perf_counter() - t
    t = time.perf_counter()
    pairing = reduce(bm)
    times["reduce"] = time.perf_counter() - t
    dgms = extract_diagrams(pairing, filt)
    return len(filt), times, [len(d) for d in dgms]


if __name__ == "__main__":
    sizes = [int(a) for a in sys.argv[1:]] or [100, 200, 300, 400]
    run(8)  # compile
    for n in sizes:
        count, times, bars = run(n)
        stages = "  ".join(f"{k} {v:6.2f}s" for k, v in times.items())
        print(f"n={n:4d} simplices={count:>10,d}  {stages}  bars(H0,H1)={bars}")

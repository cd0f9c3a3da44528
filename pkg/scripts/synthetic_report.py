"""Write a synthetic price CSV and run the full CLI on it.

    python scripts/synthetic_report.py out/ [n_prices]

Produces out/prices.csv plus the report and plot-data files.
"""

import sys
from pathlib import Path

import numpy as np

from toporisk.cli import main

out = Path(sys.argv[1] if len(sys.argv) > 1 else "synthetic_out")
n = int(sys.argv[2]) if len(sys.argv) > 2 else 300
out.mkdir(parents=True, exist_ok=True)

rng = np.random.default_rng(42)
t = np.arange(n)
r = 0.015 * np.sin(2 * np.pi * t / 29) + 0.01 * rng.standard_normal(n)
prices = 100 * np.exp(np.cumsum(r))
stamps = 1_577_836_800 + 86_400 * t
with open(out / "prices.csv", "w", newline="") as fh:
    fh.write("t,price\n")
    for s, p in zip(stamps, prices):
        fh.write(f"{int(s)},{float(p)!r}\n")

sys.exit(main(["--input", str(out / "prices.csv"), "--time-col", "t", "--out-dir", str(out),
               "--delta", "0.1", "--format", "text"]))

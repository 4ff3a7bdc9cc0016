"""
Success-probability traces for several self-loop weights on one grid,
written as a wide CSV (one column per weight) for plotting elsewhere.

    python scripts/weight_traces.py --grid 50 --steps 700 -l 0 -l 0.00015 > traces.csv
"""

import argparse
import csv
import sys

import numpy as np

from lqwalk.analysis import evolve_trace, local_peaks
from lqwalk.walk import CoinSpec, GridSpec, MarkedCluster


def main():
    ap = argparse.ArgumentParser(description="success-probability traces per self-loop weight")
    ap.add_argument("--grid", type=int, default=50)
    ap.add_argument("--cluster", type=int, default=3)
    ap.add_argument("--steps", type=int, default=700)
    ap.add_argument("-l", "--weight", type=float, action="append", dest="weights")
    args = ap.parse_args()
    weights = args.weights or [0.0, 4 / (args.grid**2 * (args.cluster**2 + 1))]

    grid, marked = GridSpec(args.grid), MarkedCluster(args.cluster)
    traces = [evolve_trace(grid, CoinSpec.lackadaisical(l), marked, args.steps).probs for l in weights]

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["step"] + [f"l={l:.9g}" for l in weights])
    for t, row in enumerate(np.column_stack(traces)):
        w.writerow([t] + [f"{p:.6f}" for p in row])

    for l, p in zip(weights, traces):
        peaks = ", ".join(f"{v:.6f}@{t}" for t, v in local_peaks(p)[:3])
        print(f"l={l:.9g}: peaks {peaks}", file=sys.stderr)


if __name__ == "__main__":
    main()

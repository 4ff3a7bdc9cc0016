"""Re-run every published table and print a compact per-row report."""

import argparse
import time

from lqwalk.analysis import DEFAULT_PATIENCE
from lqwalk.manifest import TABLES
from lqwalk.reproduce import reproduce_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("tables", nargs="*", default=sorted(TABLES))
    ap.add_argument("--include-slow", action="store_true")
    ap.add_argument("--patience", type=int, default=DEFAULT_PATIENCE)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    for name in args.tables:
        t0 = time.perf_counter()
        outcomes = reproduce_rows(TABLES[name], include_slow=args.include_slow, patience=args.patience, jobs=args.jobs)
        print(f"== {name} ({time.perf_counter() - t0:.1f}s)")
        for o in outcomes:
            r = o.row
            got = "-" if o.peak is None else f"{o.peak.prob:.6f}@{o.peak.steps}"
            print(f"  {r.label:<9} N={r.N:<6} k={r.k:<3} l={r.weight:<10.6g} published {r.prob_published:.6f}@{r.steps_published:<7} got {got:<16} {o.status}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Generate every preset figure dataset into a target directory.

Usage:
    python3 scripts/make_datasets.py [--out data] [--points N] [--workers N]

Writes fig1.csv (level curves) and fig3..fig10.csv (cycle sweeps).  With
--points the per-block grid size is overridden for quick runs.
"""
import argparse
import os
import sys
import time

from rabicycle.sweep import _FIGURE_IDS, figure_dataset, write_output


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data")
    ap.add_argument("--points", type=int, default=None)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    os.makedirs(args.out, exist_ok=True)
    for fid in _FIGURE_IDS:
        t0 = time.perf_counter()
        table = figure_dataset(fid, points=args.points, workers=args.workers)
        path = os.path.join(args.out, f"{fid}.csv")
        write_output(table, path)
        n_err = sum(1 for r in table.rows if r.status != "ok")
        note = f" ({n_err} error rows)" if n_err else ""
        print(f"{path}: {len(table.rows)} rows{note} "
              f"[{time.perf_counter() - t0:.1f}s]")
    return 0


if __name__ == "__main__":
    sys.exit(main())

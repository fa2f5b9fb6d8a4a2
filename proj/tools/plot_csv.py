#!/usr/bin/env python3
"""Render an experiment CSV (first column = x, the rest = curves) to a PNG."""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_path")
    ap.add_argument("-o", "--out", default=None, help="output PNG (default: <csv>.png)")
    ap.add_argument("--logy", action="store_true", help="log-scale the y axis")
    ap.add_argument("--logx", action="store_true", help="log-scale the x axis")
    args = ap.parse_args()

    with open(args.csv_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(c) for c in row] for row in reader]
    if len(header) < 2 or not rows:
        print("need a header plus at least one data row", file=sys.stderr)
        return 1

    xs = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(8, 5))
    for col in range(1, len(header)):
        ax.plot(xs, [r[col] for r in rows], label=header[col], linewidth=1.2)
    if args.logy:
        ax.set_yscale("log")
    if args.logx:
        ax.set_xscale("log")
    ax.set_xlabel(header[0])
    ax.legend()
    ax.grid(True, alpha=0.3)
    out = args.out or args.csv_path + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

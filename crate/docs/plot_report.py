#!/usr/bin/env python3
"""Plot the ratio columns of a `polydiv report` CSV.

    polydiv report --poly "t^2+1" --x 1e7 --y-grid 100:1000:5 --out report.csv
    python3 docs/plot_report.py report.csv ratios.png
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def main():
    if len(sys.argv) != 3:
        sys.exit("usage: plot_report.py REPORT.csv OUT.png")
    rows = load(sys.argv[1])
    y = [float(r["y"]) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    for col in ("R1", "R2", "R3"):
        ax.plot(y, [float(r[col]) for r in rows], marker="o", label=col)
    ax.set_xscale("log")
    ax.set_xlabel("y")
    ax.set_ylabel("ratio")
    ax.set_title(f"x = {rows[0]['x']}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(sys.argv[2], dpi=120)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Render PNGs from `rainfade experiment` CSV files.

    python3 tools/plot_figures.py out/*.csv --outdir plots
"""

import argparse
import csv
import pathlib
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load(path):
    curves = defaultdict(list)
    name = None
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            name = row["experiment"]
            if row["metric"].endswith("_stderr") or row["metric"] == "target":
                continue
            key = (row["scenario"], row["ar"], row["metric"], row["units"])
            curves[key].append((float(row["x_value"]), float(row["value"])))
    return name, curves


def plot(path, outdir):
    name, curves = load(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    bars = name in ("SensitivityBars", "DeploymentSnapshot")
    units = set()
    for i, ((scenario, ar, metric, unit), pts) in enumerate(sorted(curves.items())):
        pts.sort()
        xs, ys = zip(*pts)
        label = f"{scenario} AR {ar} {metric}"
        units.add(unit)
        if bars:
            width = 4.0
            ax.bar([x + (i - len(curves) / 2) * width for x in xs], ys, width=width, label=label)
        else:
            ax.plot(xs, ys, marker="o", markersize=3, label=label)
    ax.set_title(name)
    ax.set_xlabel("x")
    ax.set_ylabel(", ".join(sorted(units)))
    ax.legend(fontsize=7)
    fig.tight_layout()
    out = outdir / (pathlib.Path(path).stem + ".png")
    fig.savefig(out, dpi=120)
    plt.close(fig)
    print(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", nargs="+")
    ap.add_argument("--outdir", default="plots", type=pathlib.Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for p in args.csv:
        plot(p, args.outdir)


if __name__ == "__main__":
    main()

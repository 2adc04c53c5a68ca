#!/usr/bin/env python3
"""Plot a sweep CSV written by `thz-harq sweep`: outage versus the swept variable."""

import argparse
import csv
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {"exact": "-", "asymptotic": "--", "mc": "o", "convolution": "x"}


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", default="sweep.png")
    ap.add_argument("--xlabel", default="swept value")
    args = ap.parse_args()

    series = {}
    for r in read_rows(args.csv):
        p = float(r["p_out"])
        if math.isnan(p) or p <= 0.0:
            continue
        series.setdefault((r["scheme"], r["method"]), []).append((float(r["variable_value"]), p))

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for (scheme, method), pts in sorted(series.items()):
        xs, ys = zip(*pts)
        color = "C0" if scheme == "type1" else "C3"
        ax.semilogy(xs, ys, STYLE.get(method, "-"), color=color, label=f"{scheme} {method}", mfc="none")
    ax.set_xlabel(args.xlabel)
    ax.set_ylabel("outage probability")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()

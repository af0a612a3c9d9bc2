#!/usr/bin/env python3
"""Plot a correlation scan emitted by `coolsim --mode scan`.

Usage: plot_scan.py out/scan.csv [out/scan.png]
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else "scan.csv"
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    c1 = [float(r["re_c1"]) for r in rows]
    c2 = [float(r["re_c2"]) for r in rows]
    x = c1 if len(set(c1)) >= len(set(c2)) else c2
    label = "c1" if x is c1 else "c2"

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.6))
    ax1.plot(x, [float(r["t_min"]) for r in rows], "o-")
    ax1.set_xlabel(label)
    ax1.set_ylabel("t_min")
    ax2.plot(x, [float(r["Nb_min"]) for r in rows], "s-")
    ax2.set_xlabel(label)
    ax2.set_ylabel("Nb_min")
    fig.tight_layout()
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()

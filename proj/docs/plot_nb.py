#!/usr/bin/env python3
"""Plot a phonon-number transient emitted by `coolsim --mode run`.

Usage: plot_nb.py out/nb.csv [out/nb.png]
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else "nb.csv"
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    t = [float(r["t"]) for r in rows]
    nb = [float(r["N_b"]) for r in rows]

    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.plot(t, nb, lw=1.2, label="N_b")
    for col, style in (("Nb_fth", ":"), ("Nb_f2", "--"), ("Nb_initial", "-.")):
        if col in rows[0]:
            ax.plot(t, [float(r[col]) for r in rows], style, lw=0.9, label=col)
    ax.set_xlabel("t  [1/omega_m]")
    ax.set_ylabel("phonon number")
    if min(nb) > 0:
        ax.set_yscale("log")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()

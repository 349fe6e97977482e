"""Figure rendering for report output.

Matplotlib with the Agg backend; every function writes a file and
returns its path.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_rates(rows, path: str):
    """Horizontal bar chart of the comparison table, computed rows
    highlighted against the literature reference rows."""
    rows = [r for r in rows if r["rate"] is not None and r["name"] != ""]
    names = [r["name"] for r in rows]
    rates = [r["rate"] for r in rows]
    colors = ["#2c7fb8" if r["provenance"] == "computed" else "#bdbdbd"
              for r in rows]
    fig, ax = plt.subplots(figsize=(8, 0.4 * len(rows) + 1.5))
    y = np.arange(len(rows))
    ax.barh(y, rates, color=colors)
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("code rate (log4 M / n)")
    ax.set_title("DNA code rates: computed vs literature")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_fold(seq: str, witness, energy: int, path: str):
    """Arc diagram of the stem witness pairs over the sequence."""
    n = len(seq)
    fig, ax = plt.subplots(figsize=(max(6, n * 0.25), 3))
    for idx, base in enumerate(seq, start=1):
        ax.text(idx, 0, base, ha="center", va="center", fontsize=9,
                family="monospace")
    if witness:
        for i, j in witness:
            mid = (i + j) / 2
            radius = (j - i) / 2
            theta = np.linspace(0, np.pi, 64)
            ax.plot(mid + radius * np.cos(theta), 0.15 + 0.5 * radius / n
                    * np.sin(theta) * 4, color="#d95f0e", lw=1.2)
    ax.set_xlim(0, n + 1)
    ax.set_ylim(-0.5, 2.2)
    ax.axis("off")
    stem = len(witness) if witness else 0
    ax.set_title(f"min free energy {energy}, max stem {stem}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

"""Matplotlib figures for CLI reports: the Gram digraph and benchmark timings."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .symplectic import GramData  # noqa: E402


def _circle_layout(n: int) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.0, 0.0)]
    return [(math.cos(math.pi / 2 - 2 * math.pi * i / n), math.sin(math.pi / 2 - 2 * math.pi * i / n)) for i in range(n)]


def plot_gram(g: GramData, path: str | Path, title: str | None = None) -> Path:
    """Draw the digraph with an edge ``v_i -> v_j`` for each ``i < j`` with ``A[i, j] = 1``."""
    path = Path(path)
    pos = _circle_layout(g.r)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for i, j in g.edges():
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.annotate(
            "",
            xy=(x1, y1),
            xytext=(x0, y0),
            arrowprops=dict(arrowstyle="-|>", color="0.3", lw=1.2, shrinkA=14, shrinkB=14),
        )
    for i, (x, y) in enumerate(pos):
        ax.scatter([x], [y], s=600, color="white", edgecolors="black", zorder=3)
        ax.text(x, y, f"$v_{{{i + 1}}}$", ha="center", va="center", zorder=4)
    ax.set_aspect("equal")
    ax.margins(0.2)
    ax.axis("off")
    ax.set_title(title or f"Gram digraph ({len(g.edges())} edges)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_timings(times_ms: Sequence[float], path: str | Path, m: int | None = None) -> Path:
    """Per-trial wall time with the median marked."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5, 3))
    trials = range(1, len(times_ms) + 1)
    ax.plot(trials, times_ms, "o-", color="tab:blue", ms=4)
    if times_ms:
        med = sorted(times_ms)[len(times_ms) // 2]
        ax.axhline(med, color="tab:red", ls="--", lw=1, label=f"median {med:.1f} ms")
        ax.legend(frameon=False)
    ax.set_xlabel("trial")
    ax.set_ylabel("time (ms)")
    ax.set_ylim(bottom=0)
    ax.set_title("decompose_symplectic" + (f", m = {m}" if m is not None else ""))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

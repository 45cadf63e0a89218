"""Matplotlib rendering for the CLI report paths.

Two figure families: Hasse diagrams of the finite boards (layered by longest
path from the minimum) and the winner grid of the interval-family table.
Figures are written to files; no interactive backend is assumed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .posetgame import FinitePoset


def _layers(poset: FinitePoset) -> list[int]:
    n = len(poset)
    depth = [0] * n
    order = sorted(range(n), key=lambda i: poset.down[i].bit_count())
    for i in order:
        best = 0
        for j in range(n):
            if j != i and poset.leq(j, i):
                best = max(best, depth[j] + 1)
        depth[i] = best
    return depth


def hasse_figure(
    poset: FinitePoset,
    present_mask: int | None = None,
    title: str = "",
    ax=None,
):
    """Layered Hasse diagram; absent elements are ghosted."""
    if ax is None:
        fig, ax = plt.subplots(figsize=(7, 5))
    else:
        fig = ax.figure
    depth = _layers(poset)
    by_layer: dict[int, list[int]] = {}
    for i, d in enumerate(depth):
        by_layer.setdefault(d, []).append(i)
    pos = {}
    for d, items in by_layer.items():
        items.sort(key=lambda i: str(poset.labels[i]))
        width = len(items)
        for col, i in enumerate(items):
            pos[i] = (col - (width - 1) / 2.0, d)
    for lo, hi in poset.cover_pairs():
        i, j = poset.index(lo), poset.index(hi)
        x0, y0 = pos[i]
        x1, y1 = pos[j]
        ax.plot([x0, x1], [y0, y1], color="0.65", lw=1, zorder=1)
    for i in range(len(poset)):
        x, y = pos[i]
        here = present_mask is None or (present_mask >> i) & 1
        face = "tab:blue" if here else "0.9"
        edge = "black" if here else "0.7"
        ax.scatter([x], [y], s=420, c=face, edgecolors=edge, zorder=2)
        ax.annotate(
            str(poset.labels[i]),
            (x, y),
            ha="center",
            va="center",
            color="white" if here else "0.6",
            fontsize=8,
            zorder=3,
        )
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    return fig


def table_figure(cells: list[dict], title: str = ""):
    """Winner grid for interval semigroups: rows a, columns k."""
    a_vals = sorted({c["a"] for c in cells})
    k_vals = sorted({c["k"] for c in cells})
    fig, ax = plt.subplots(
        figsize=(1.1 * len(k_vals) + 2, 0.55 * len(a_vals) + 1.5)
    )
    color = {"A": "#b8e0b8", "B": "#b8c6e0", "B<=": "#dfe8f5", "?": "#eeeeee"}
    for c in cells:
        i = a_vals.index(c["a"])
        j = k_vals.index(c["k"])
        verdict = c["verdict"]
        kind = (
            "A" if verdict.startswith("A") else
            "B<=" if verdict.startswith("B<=") else
            "B" if verdict == "B" else "?"
        )
        ax.add_patch(
            plt.Rectangle((j, i), 1, 1, facecolor=color[kind], edgecolor="white")
        )
        ax.text(j + 0.5, i + 0.5, verdict, ha="center", va="center", fontsize=8)
    ax.set_xlim(0, len(k_vals))
    ax.set_ylim(len(a_vals), 0)
    ax.set_xticks([v + 0.5 for v in range(len(k_vals))], [str(k) for k in k_vals])
    ax.set_yticks([v + 0.5 for v in range(len(a_vals))], [str(a) for a in a_vals])
    ax.set_xlabel("k")
    ax.set_ylabel("a")
    if title:
        ax.set_title(title)
    ax.tick_params(length=0)
    for spine in ax.spines.values():
        spine.set_visible(False)
    return fig


def save_figure(fig, path: str) -> None:
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)

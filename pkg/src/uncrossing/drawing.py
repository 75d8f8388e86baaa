"""Hasse diagram rendering to image files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .posets import FinitePoset


def draw_hasse(
    P: FinitePoset,
    path: str,
    *,
    edge_labels: bool = True,
    max_elements: int = 400,
) -> None:
    """Render the Hasse diagram of a graded poset to ``path``.

    Elements sit at their rank height, spread evenly within each rank;
    cover labels are drawn at edge midpoints when present.
    """
    if len(P.elements) > max_elements:
        raise ValueError(
            "%s has %d elements; refusing to draw more than %d"
            % (P.name, len(P.elements), max_elements)
        )
    by_rank: dict[int, list] = {}
    for el in P.elements:
        by_rank.setdefault(P.rank_of(el), []).append(el)
    pos: dict = {}
    width = max(len(row) for row in by_rank.values())
    for rank, row in sorted(by_rank.items()):
        step = width / (len(row) + 1)
        for k, el in enumerate(row):
            pos[el] = ((k + 1) * step, rank)

    height = max(by_rank) + 1
    fig, ax = plt.subplots(figsize=(max(6, 1.4 * width), max(4, 1.2 * height)))
    for lo, hi in P.covers():
        (x1, y1), (x2, y2) = pos[lo], pos[hi]
        ax.plot([x1, x2], [y1, y2], color="0.6", lw=0.8, zorder=1)
        if edge_labels and P.has_labels:
            ax.text(
                (x1 + x2) / 2,
                (y1 + y2) / 2,
                str(P.label(lo, hi)),
                fontsize=6,
                color="tab:blue",
                ha="center",
                va="center",
                zorder=2,
            )
    for el, (x, y) in pos.items():
        ax.text(
            x,
            y,
            str(el),
            fontsize=8,
            ha="center",
            va="center",
            zorder=3,
            bbox=dict(boxstyle="round,pad=0.25", fc="white", ec="0.3", lw=0.6),
        )
    ax.set_axis_off()
    ax.set_title(P.name)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)

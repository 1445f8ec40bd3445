"""Static figures: Hasse diagrams and Jordan-type tallies."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .combinat import format_partition  # noqa: E402
from .lattice import FiniteLattice, chain_length_bounds  # noqa: E402

# fixed metadata keeps repeated renders byte-identical
_METADATA = {"Software": None}

plt.rcParams.update({"font.size": 9, "savefig.dpi": 120})


def _save(fig, path):
    fig.savefig(path, metadata=_METADATA)
    plt.close(fig)


def hasse_layout(L: FiniteLattice) -> dict[int, tuple[float, float]]:
    """Rows by longest chain from the bottom; each row centred."""
    _, longest = chain_length_bounds(L)
    rows: dict[int, list[int]] = {}
    for x in range(len(L)):
        rows.setdefault(int(longest[x]), []).append(x)
    pos = {}
    for level, members in rows.items():
        width = len(members)
        for k, x in enumerate(members):
            pos[x] = (k - (width - 1) / 2, float(level))
    return pos


def draw_hasse(L: FiniteLattice, path, highlight: Iterable[int] = (), title: Optional[str] = None):
    pos = hasse_layout(L)
    marked = set(highlight)
    widest = max(sum(1 for q in pos.values() if q[1] == lvl) for lvl in {q[1] for q in pos.values()})
    fig, ax = plt.subplots(figsize=(max(4.0, 0.7 * widest), max(3.0, 1.1 * (L.height_value + 1))))
    for x, y in L.cover_pairs():
        (x0, y0), (x1, y1) = pos[x], pos[y]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=0.8, zorder=1)
    for x, (px, py) in pos.items():
        face = "tab:orange" if x in marked else "white"
        ax.scatter([px], [py], s=120, c=face, edgecolors="k", zorder=2)
        if len(L) <= 40:
            ax.annotate(L.label(x), (px, py), xytext=(6, 4), textcoords="offset points", fontsize=7)
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    _save(fig, path)


def draw_type_tally(types: Iterable[tuple[int, ...]], path, title: Optional[str] = None):
    """Bar chart of how often each Jordan type (block partition) occurs."""
    tally = Counter(format_partition(t) for t in types)
    names = sorted(tally, key=lambda s: (-tally[s], s))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(names) + 2), 3.2))
    ax.bar(range(len(names)), [tally[s] for s in names], color="tab:blue")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("matrices")
    ax.set_xlabel("Jordan type")
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    _save(fig, path)

"""Figures written next to the JSON/text reports (matplotlib, Agg backend)."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .levy import LevyClass  # noqa: E402

VERDICT_COLORS = {"ok": "#4c72b0", "observed": "#bbbbbb", "violation": "#c44e52"}


def _class_key(name: str):
    c = LevyClass.parse(name)
    return (c.level, {"Delta": 0, "Sigma": 1, "Pi": 2}[c.kind])


def plot_suite(summary: dict[str, dict[str, int]], path: Path, title: str = "") -> Path:
    """Stacked horizontal bars: checked cells per formula, split by verdict."""
    ids = sorted(summary)
    fig, ax = plt.subplots(figsize=(7, 0.35 * len(ids) + 1.5))
    left = [0] * len(ids)
    for verdict in ("ok", "observed", "violation"):
        counts = [summary[i].get(verdict, 0) for i in ids]
        ax.barh(ids, counts, left=left, color=VERDICT_COLORS[verdict], label=verdict)
        left = [a + b for a, b in zip(left, counts)]
    ax.set_xlabel("(pair, assignment) cells")
    ax.invert_yaxis()
    ax.legend(loc="lower right", frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_class_histogram(classes: list[str], path: Path, title: str = "") -> Path:
    counts = Counter(classes)
    names = sorted(counts, key=_class_key)
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.bar(names, [counts[n] for n in names], color="#55a868")
    ax.set_ylabel("entries")
    ax.set_xlabel("derived class")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path

"""Figures written next to CLI reports (``--figures DIR``)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .superalg import OUT_OF_WINDOW, AlgebraDef  # noqa: E402


def table_heatmap(alg: AlgebraDef, path: Path) -> Path:
    """Number of terms in each product x*y; out-of-window cells are hatched grey."""
    n = len(alg.basis)
    grid = [[0.0] * n for _ in range(n)]
    out = []
    for i, x in enumerate(alg.basis):
        for j, y in enumerate(alg.basis):
            v = alg.table[(x, y)]
            if v is OUT_OF_WINDOW:
                grid[i][j] = float("nan")
                out.append((i, j))
            else:
                grid[i][j] = len(v)
    size = max(3.0, 0.28 * n + 1.5)
    fig, ax = plt.subplots(figsize=(size + 1, size))
    im = ax.imshow(grid, cmap="viridis", interpolation="nearest")
    for i, j in out:
        ax.add_patch(plt.Rectangle((j - 0.5, i - 0.5), 1, 1, fill=True, color="0.8", hatch="//", lw=0))
    labels = [str(s) for s in alg.basis]
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    fs = 8 if n <= 20 else 5
    ax.set_xticklabels(labels, rotation=90, fontsize=fs)
    ax.set_yticklabels(labels, fontsize=fs)
    ax.set_xlabel("right factor")
    ax.set_ylabel("left factor")
    ax.set_title(f"{alg.name}: terms per product")
    fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def check_bars(rows: list[tuple[str, int, int, int]], title: str, path: Path) -> Path:
    """Stacked bars of (check, checked, skipped, failures)."""
    names = [r[0] for r in rows]
    passed = [r[1] - r[3] for r in rows]
    failed = [r[3] for r in rows]
    skipped = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.7 * len(rows) + 2), 3.5))
    xs = range(len(rows))
    ax.bar(xs, passed, color="tab:green", label="passed")
    ax.bar(xs, failed, bottom=passed, color="tab:red", label="failed")
    ax.bar(xs, skipped, bottom=[p + f for p, f in zip(passed, failed)], color="0.7", label="skipped")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("tuples")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

"""Figures for reports: hat complexes in the (A, M) plane, the Mazur grading
table, and the phi matrix.  Everything renders to files with the Agg backend.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .hatfilter import FilteredComplex, vertically_simplify  # noqa: E402
from .mazur import ConstraintSet, IntersectionTable  # noqa: E402


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_filtered(f: FilteredComplex, path, title: str = "", simplified: bool = True) -> Path:
    """Generators at (A, M); arrows are the differential, or the vertically
    simplified arrows when ``simplified``.  Generators sharing a spot fan out."""
    fig, ax = plt.subplots(figsize=(5, 4))
    seen: Counter = Counter()
    pos = {}
    for name in sorted(f.gens):
        m, a = f.gens[name]
        k = seen[(a, m)]
        seen[(a, m)] += 1
        pos[name] = (a + 0.12 * k, m + 0.08 * k)
    xs, ys = zip(*pos.values()) if pos else ((), ())
    ax.scatter(xs, ys, s=18, color="k", zorder=3)
    if simplified and f.gens:
        vb = vertically_simplify(f)
        pairs = [(x.source, x.target, x.length) for x in vb.arrows]
        for cyc in vb.cycles:
            for name in cyc:
                ax.scatter(*pos[name], s=60, facecolors="none", edgecolors="tab:red", zorder=4)
    else:
        pairs = [(s, t, f.length(s, t)) for s, t in sorted(f.arrows)]
    for s, t, length in pairs:
        (x0, y0), (x1, y1) = pos[s], pos[t]
        ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="->", color="tab:blue", lw=0.8))
        ax.text((x0 + x1) / 2, (y0 + y1) / 2, str(length), fontsize=7, color="tab:blue")
    ax.set_xlabel("Alexander grading A")
    ax.set_ylabel("Maslov grading M")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_table(t: IntersectionTable, path, cs: ConstraintSet | None = None) -> Path:
    """Point counts per (A, M) class; classes named by ``cs`` are ringed."""
    cls = t.classes()
    fig, ax = plt.subplots(figsize=(6, 5))
    a, m = zip(*cls)
    ax.scatter(a, m, s=[12 * c for c in cls.values()], alpha=0.6)
    if cs is not None:
        named = {(r.a, r.m) for r in cs.rules}
        ax.scatter([p[0] for p in named], [p[1] for p in named], s=90,
                   facecolors="none", edgecolors="tab:red", label="constrained class")
        ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("A")
    ax.set_ylabel("M")
    ax.set_title(f"intersection points, n={t.n} ({len(t)} points)")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_phi_matrix(mat: list, path, first_col: int = 2) -> Path:
    n = len(mat)
    fig, ax = plt.subplots(figsize=(0.3 * n + 2, 0.3 * n + 2))
    ax.imshow(mat, cmap="Greys", vmin=-1, vmax=1)
    ax.set_xticks(range(n))
    ax.set_xticklabels([str(j) for j in range(first_col, first_col + n)], fontsize=7)
    ax.set_yticks(range(n))
    ax.set_yticklabels([str(i) for i in range(1, n + 1)], fontsize=7)
    ax.set_xlabel("j")
    ax.set_ylabel("iterate n")
    ax.set_title("phi_j")
    return _save(fig, path)

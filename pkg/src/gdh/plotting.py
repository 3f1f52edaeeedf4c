"""Report figures: each report writes a CSV table and a PNG next to it."""

from __future__ import annotations

import csv
import os
from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import Family, TheorySignature  # noqa: E402
from .extremal import extremal_number, langlois_construction  # noqa: E402
from .lagrangian import blowup_density_sequence  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 9,
    "axes.labelsize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "lines.linewidth": 1.2,
    "lines.markersize": 4,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def _figure(width: float = 4.8, height: float | None = None):
    golden = (5 ** 0.5 - 1) / 2
    with matplotlib.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(width, height or width * golden))
    return fig, ax


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _save(fig, path: str) -> None:
    with matplotlib.rc_context(STYLE):
        fig.savefig(path)
    plt.close(fig)


def blowup_sequence_report(theory: TheorySignature, t_max: int, outdir: str) -> dict:
    """Densities of the ``(t, ..., t)``-blowups of one edge against their limit."""
    os.makedirs(outdir, exist_ok=True)
    limit = Fraction(theory.m, theory.r ** theory.r)
    rows = []
    for t in range(1, t_max + 1):
        v = blowup_density_sequence(theory, t, exact=True)
        rows.append((t, v.numerator, v.denominator, float(v), float(v - limit)))
    csv_path = os.path.join(outdir, "blowup_sequence.csv")
    png_path = os.path.join(outdir, "blowup_sequence.png")
    _write_csv(csv_path, ["t", "numerator", "denominator", "density", "excess_over_limit"], rows)

    with matplotlib.rc_context(STYLE):
        fig, ax = _figure()
        ax.plot([r[0] for r in rows], [r[3] for r in rows], "o-", label="blowup of one edge")
        ax.axhline(float(limit), color="k", ls="--", label=f"m/r^r = {limit}")
        ax.set_xlabel("t")
        ax.set_ylabel("edge density")
        ax.set_title(f"r={theory.r}, m={theory.m}")
        ax.legend()
    _save(fig, png_path)
    return {"csv": csv_path, "figure": png_path, "rows": len(rows)}


def langlois_report(n_max: int, outdir: str) -> dict:
    os.makedirs(outdir, exist_ok=True)
    rows = []
    for n in range(3, n_max + 1):
        G = langlois_construction(n)
        rows.append((n, G.num_edges, G.density()))
    csv_path = os.path.join(outdir, "langlois.csv")
    png_path = os.path.join(outdir, "langlois.png")
    _write_csv(csv_path, ["n", "edges", "density"], rows)

    with matplotlib.rc_context(STYLE):
        fig, ax = _figure()
        ax.plot([r[0] for r in rows], [r[2] for r in rows], "o-", label="construction")
        ax.axhline(4 / 27, color="k", ls="--", label="4/27")
        ax.set_xlabel("n")
        ax.set_ylabel("edge density")
        ax.legend()
    _save(fig, png_path)
    return {"csv": csv_path, "figure": png_path, "rows": len(rows)}


def density_bounds_report(theory: TheorySignature, fam: Family, n_values: Sequence[int],
                          outdir: str, budget: int, threads: int = 1) -> dict:
    """Exact extremal densities over ``n_values``; non-exhaustive rows are flagged."""
    os.makedirs(outdir, exist_ok=True)
    rows = []
    for n in n_values:
        res = extremal_number(theory, n, fam, budget=budget, threads=threads)
        rows.append((n, res.best_edge_count, theory.max_edges(n), res.density_bound,
                     int(res.exhaustive), res.nodes_explored))
    csv_path = os.path.join(outdir, "density_bounds.csv")
    png_path = os.path.join(outdir, "density_bounds.png")
    _write_csv(csv_path, ["n", "ex", "max_edges", "density", "exhaustive", "nodes"], rows)

    with matplotlib.rc_context(STYLE):
        fig, ax = _figure()
        ax.plot([r[0] for r in rows], [r[3] for r in rows], "s-", label="ex / max edges")
        ax.set_xlabel("n")
        ax.set_ylabel("extremal density")
        ax.set_ylim(0, 1.05)
        ax.legend()
    _save(fig, png_path)
    return {"csv": csv_path, "figure": png_path, "rows": len(rows),
            "exhaustive": all(r[4] for r in rows)}

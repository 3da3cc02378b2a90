"""Report rendering: figures and delimited tables for solver output.

Figures are drawn with a transient barycentric (Tutte) layout: the
lexicographically first face is pinned as the outer triangle and every other
vertex solves to the average of its neighbors, which is crossing-free for a
maximal planar graph. Coordinates exist only for rendering; nothing in the
data model stores them.
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless rendering; must precede pyplot import

import matplotlib.pyplot as plt
import numpy as np

from .core import Triangulation, WeightedInstance
from .io import format_report, format_weight
from .moves import MoveSequence, apply_sequence
from .solver import SolveReport


def tutte_layout(G: Triangulation) -> dict[int, tuple[float, float]]:
    """Straight-line planar coordinates: outer face on a triangle, interior
    vertices at the centroid of their neighbors (one linear solve)."""
    outer = min(G.faces)
    pos: dict[int, tuple[float, float]] = {}
    for corner, angle in zip(outer, (90.0, 210.0, 330.0)):
        rad = math.radians(angle)
        pos[corner] = (math.cos(rad), math.sin(rad))
    interior = [v for v in range(1, G.n + 1) if v not in pos]
    if interior:
        idx = {v: i for i, v in enumerate(interior)}
        A = np.zeros((len(interior), len(interior)))
        b = np.zeros((len(interior), 2))
        for v in interior:
            nbrs = G.neighbors(v)
            A[idx[v], idx[v]] = len(nbrs)
            for w in nbrs:
                if w in idx:
                    A[idx[v], idx[w]] -= 1.0
                else:
                    b[idx[v]] += pos[w]
        xy = np.linalg.solve(A, b)
        for v in interior:
            pos[v] = (float(xy[idx[v], 0]), float(xy[idx[v], 1]))
    return pos


def render_triangulation(
    G: Triangulation,
    path: Path | str,
    instance: WeightedInstance | None = None,
    title: str | None = None,
) -> None:
    """Draw the embedding to an image file; edge width tracks weight."""
    pos = tutte_layout(G)
    fig, ax = plt.subplots(figsize=(6, 6))
    wmax = float(instance.max_weight()) if instance is not None else 0.0
    for u, v in sorted(G.edges):
        x = (pos[u][0], pos[v][0])
        y = (pos[u][1], pos[v][1])
        if instance is not None:
            w = float(instance.weight_of((u, v)))
            if w > 0:
                width = 0.8 + 2.2 * (w / wmax if wmax > 0 else 0.0)
                ax.plot(x, y, color="#1f3d7a", linewidth=width, zorder=1)
            else:
                ax.plot(x, y, color="#b0b0b0", linewidth=0.7, linestyle=":", zorder=0)
        else:
            ax.plot(x, y, color="#1f3d7a", linewidth=1.0, zorder=1)
    xs = [pos[v][0] for v in range(1, G.n + 1)]
    ys = [pos[v][1] for v in range(1, G.n + 1)]
    ax.scatter(xs, ys, s=260, color="white", edgecolors="black", zorder=2)
    for v in range(1, G.n + 1):
        ax.annotate(str(v), pos[v], ha="center", va="center", fontsize=9, zorder=3)
    if title:
        ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_weight_trace(weights: list[Fraction], path: Path | str, title: str) -> None:
    """Step plot of the weight after each accepted move (step 0 = start)."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.step(range(len(weights)), [float(w) for w in weights], where="post", color="#1f3d7a")
    ax.plot(range(len(weights)), [float(w) for w in weights], ".", color="#1f3d7a")
    ax.set_xlabel("move")
    ax.set_ylabel("total weight")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_edge_table(G: Triangulation, instance: WeightedInstance | None, path: Path | str) -> None:
    """Tab-delimited edge listing of a graph, rows in lexicographic order."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(["u", "v", "weight"])
        for u, v in sorted(G.edges):
            w = instance.weight_of((u, v)) if instance is not None else Fraction(0)
            writer.writerow([u, v, format_weight(w)])


def write_trace_table(
    start: Triangulation,
    trace: MoveSequence,
    instance: WeightedInstance,
    path: Path | str,
) -> list[Fraction]:
    """Tab-delimited replay of a move trace with the weight after each step.

    Returns the weight sequence (index 0 = start) for the trace figure.
    """
    weights = [start.weight(instance)]
    H = start
    rows = [("0", "start", "", format_weight(weights[0]))]
    for i, move in enumerate(trace, start=1):
        H = apply_sequence(H, MoveSequence((move,)), validate=False)
        weights.append(H.weight(instance))
        detail = (
            f"{move.edge[0]}-{move.edge[1]}"
            if move.kind == "flip"
            else f"{move.vertex}->{','.join(map(str, move.face))}"
        )
        rows.append((str(i), move.kind, detail, format_weight(weights[-1])))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(["step", "move", "detail", "weight"])
        writer.writerows(rows)
    return weights


def write_report_bundle(
    report: SolveReport,
    instance: WeightedInstance,
    outdir: Path | str,
    start: Triangulation | None = None,
) -> list[Path]:
    """Write report.json plus figures and tables into ``outdir``.

    Always: report.json; with at least one graph: best_graph.png and
    best_edges.tsv; with a trace and a start graph: trace.tsv and
    weight_trace.png. Returns the paths written.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = [outdir / "report.json"]
    (outdir / "report.json").write_text(format_report(report) + "\n")
    if report.best_graphs:
        best = report.best_graphs[0]
        render_triangulation(
            best,
            outdir / "best_graph.png",
            instance,
            title=f"{report.method}: weight {format_weight(report.best_weight)}",
        )
        write_edge_table(best, instance, outdir / "best_edges.tsv")
        written += [outdir / "best_graph.png", outdir / "best_edges.tsv"]
    if report.trace is not None and start is not None:
        weights = write_trace_table(start, report.trace, instance, outdir / "trace.tsv")
        render_weight_trace(
            weights,
            outdir / "weight_trace.png",
            title=f"{report.method} weight trace",
        )
        written += [outdir / "trace.tsv", outdir / "weight_trace.png"]
    return written

"""Batch report: delimited per-m summary plus rendered figures.

The report command runs the verification pipeline over a range of m and
writes a CSV table next to two PNG figures: the dual graph of the
minimal resolution, and the graded dimension profile with the Euler
characteristic / Lefschetz number comparison across the range.
"""

from __future__ import annotations

import csv
import io
import os
from typing import Iterable

from .correspondence import PipelineResult
from .resolution import DualGraph

CSV_FIELDS = [
    "curve",
    "m",
    "shift",
    "components",
    "hc",
    "hf",
    "chi_c",
    "lefschetz",
    "match",
    "euler_match",
]


def _dims_text(dims) -> str:
    return ";".join(f"{deg}:{dim}" for deg, dim in dims.items())


def report_rows(results: Iterable[PipelineResult]) -> list[dict]:
    rows = []
    for res in results:
        rep = res.report
        rows.append(
            {
                "curve": rep.curve,
                "m": rep.m,
                "shift": rep.shift,
                "components": sum(c.copies for c in res.census),
                "hc": _dims_text(rep.hc),
                "hf": _dims_text(rep.hf),
                "chi_c": rep.chi_c,
                "lefschetz": rep.lefschetz,
                "match": rep.match,
                "euler_match": rep.euler_match,
            }
        )
    return rows


def render_csv(results: Iterable[PipelineResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in report_rows(results):
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Figures
# ---------------------------------------------------------------------------


def _graph_layout(graph: DualGraph) -> dict[int, tuple[float, float]]:
    """Deterministic tree layout: depth from the root on x, leaves spread on y."""
    adj = graph.adjacency()
    pos: dict[int, tuple[float, float]] = {}
    next_row = [0.0]

    def place(node: int, parent: int | None, depth: int) -> float:
        children = [x for x in adj[node] if x != parent]
        if not children:
            y = next_row[0]
            next_row[0] += 1.0
        else:
            ys = [place(c, node, depth + 1) for c in sorted(children)]
            y = sum(ys) / len(ys)
        pos[node] = (float(depth), y)
        return y

    place(graph.root, None, 0)
    return pos


def save_graph_figure(graph: DualGraph, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pos = _graph_layout(graph)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for i, j in graph.sorted_edges():
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.plot([x0, x1], [y0, y1], color="0.6", zorder=1, lw=1.2)
    for i in sorted(graph.nodes):
        n = graph.nodes[i]
        x, y = pos[i]
        if n.kind == "strict":
            ax.scatter([x], [y], marker="s", s=90, color="tab:orange", zorder=2)
            ax.annotate(
                f"C~{n.branch + 1}", (x, y), textcoords="offset points",
                xytext=(0, 9), ha="center", fontsize=7,
            )
        else:
            rupture = graph.valency(i) >= 3
            ax.scatter(
                [x], [y], marker="o", s=140 if rupture else 90,
                facecolor="white", edgecolor="tab:blue",
                linewidths=2.2 if rupture else 1.2, zorder=2,
            )
            ax.annotate(
                f"N={n.N}\nnu={n.nu}", (x, y), textcoords="offset points",
                xytext=(0, 9), ha="center", fontsize=7,
            )
    ax.set_title(f"{graph.curve.name}: dual graph ({graph.separation})")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_dims_figure(results: list[PipelineResult], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax_dims, ax_euler) = plt.subplots(
        2, 1, figsize=(7, 6), height_ratios=[2, 1], sharex=True
    )
    for res in results:
        for deg, dim in res.hf.items():
            ax_dims.scatter(
                [res.m], [deg], s=22 * dim, color="tab:blue", alpha=0.7
            )
    ax_dims.set_ylabel("HF degree (marker size = dimension)")
    ax_dims.set_title(
        f"{results[0].curve.name}: Floer dimensions and Euler comparison"
    )
    ms = [res.m for res in results]
    ax_euler.plot(
        ms, [res.report.chi_c for res in results],
        marker="o", label="chi_c of the contact locus", color="tab:blue",
    )
    ax_euler.plot(
        ms, [res.report.lefschetz for res in results],
        marker="x", ls="--", label="Lefschetz number", color="tab:red",
    )
    ax_euler.set_xlabel("m")
    ax_euler.set_ylabel("Euler / Lefschetz")
    ax_euler.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(
    results: list[PipelineResult], out_csv: str
) -> list[str]:
    """Write the delimited table and the figures next to it.

    Returns the list of files written.
    """
    stem, _ = os.path.splitext(out_csv)
    with open(out_csv, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_csv(results))
    written = [out_csv]
    graph_png = f"{stem}_graph.png"
    save_graph_figure(results[0].minimal, graph_png)
    written.append(graph_png)
    dims_png = f"{stem}_dims.png"
    save_dims_figure(results, dims_png)
    written.append(dims_png)
    return written

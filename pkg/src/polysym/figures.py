"""PNG figures and CSV tables for the pentagon and hexagon reports.

Matplotlib is imported lazily with the Agg backend so the CLI works
headless and only pays the import cost when figures are requested.
"""
from __future__ import annotations

import csv
import os
from typing import List


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _bar(plt, ax, labels, values, title):
    ax.bar(range(len(values)), values, color="#4878a8")
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels(labels)
    ax.set_title(title)
    for i, v in enumerate(values):
        ax.text(i, v, str(v), ha="center", va="bottom", fontsize=9)


def pentagon_figures(report, out_dir: str) -> List[str]:
    """Write the pentagon report figures; returns the file paths."""
    plt = _plt()
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    fv = report.f_vectors
    _bar(plt, axes[0], ["v", "e", "f"], list(fv["Reduced"]),
         "reduced complex f-vector")
    _bar(plt, axes[1], ["v", "e", "f"], list(fv["FullyReduced"]),
         "fully reduced complex f-vector")
    fig.tight_layout()
    p = os.path.join(out_dir, "pentagon_f_vectors.png")
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)

    census = report.sign_census
    per_type = census["per_type"]
    fig, ax = plt.subplots(figsize=(6, 4))
    _bar(plt, ax, list(per_type.keys()), list(per_type.values()),
         f"sign-cell classes by type (total {census['total']})")
    fig.tight_layout()
    p = os.path.join(out_dir, "pentagon_sign_census.png")
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)

    fig, ax = plt.subplots(figsize=(6, 4))
    sizes = sorted(c["samples"] for c in census["classes"])
    ax.plot(sizes, marker="o", linestyle="", markersize=4)
    ax.set_yscale("log")
    ax.set_xlabel("class (sorted)")
    ax.set_ylabel("grid samples")
    ax.set_title("sample mass per sign-cell class")
    fig.tight_layout()
    p = os.path.join(out_dir, "pentagon_class_sizes.png")
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)
    return paths


def pentagon_csv(report, path: str) -> str:
    """One row per sign-cell class: label, winding, type, samples, components."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["class", "winding", "type", "samples", "components"])
        for c in sorted(report.sign_census["classes"],
                        key=lambda c: (c["type"], c["signs"], c["winding"])):
            w.writerow([c["signs"], c["winding"], c["type"], c["samples"],
                        c["components"]])
    return path


def hexagon_figures(report, out_dir: str) -> List[str]:
    plt = _plt()
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    fig, ax = plt.subplots(figsize=(6, 4))
    _bar(plt, ax, ["v", "e", "f"], list(report.convex_boundary_f_vector),
         "boundary of the convex cell: f-vector")
    fig.tight_layout()
    p = os.path.join(out_dir, "hexagon_boundary_f_vector.png")
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)

    orders = sorted(report.realized_stabilizer_orders)
    counts = {o: orders.count(o) for o in sorted(set(orders))}
    fig, ax = plt.subplots(figsize=(6, 4))
    _bar(plt, ax, [str(o) for o in counts], list(counts.values()),
         "cells by stabilizer order")
    fig.tight_layout()
    p = os.path.join(out_dir, "hexagon_stabilizer_orders.png")
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)
    return paths


def hexagon_csv(report, path: str) -> str:
    """Summary rows: one per named quantity in the hexagon report."""
    rows = [
        ("boundary_vertices", report.convex_boundary_f_vector[0]),
        ("boundary_edges", report.convex_boundary_f_vector[1]),
        ("boundary_faces", report.convex_boundary_f_vector[2]),
        ("boundary_euler", report.convex_boundary_euler),
        ("fine_cells_convex", report.fine_cell_count),
        ("barycenter_stabilizer_order", report.convex_stabilizer_order),
        ("star_polygon_types", len(report.star_windings)),
        ("reduced_vertices", report.reduced_vertex_count),
        ("fully_reduced_vertices", report.fully_reduced_vertex_count),
        ("missing_subgroups", len(report.missing_subgroups)),
    ]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["quantity", "value"])
        w.writerows(rows)
    return path

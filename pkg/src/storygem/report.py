"""Diagnostic report for a solved layout: a words.csv table plus matplotlib
figures checking the layout's promises (area tracks weight, optimized scales).

Consumes the layout JSON written by `storygem --format json`; figures render
headless to PNG files next to the CSV.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _shoelace(points) -> float:
    total = 0.0
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2.0


def _leaf_rows(doc: dict) -> list[dict]:
    container_area = _shoelace(doc["container"])
    rows = []
    for cluster_id, cluster in enumerate(doc["cells"]):
        cluster_weight = cluster.get("weight", 0.0)
        for leaf in cluster.get("children", []):
            placement = leaf.get("placement", {})
            rows.append(
                {
                    "word": leaf.get("word", str(leaf.get("word_index"))),
                    "cluster": cluster_id,
                    "color": leaf.get("color"),
                    "weight": leaf.get("weight"),
                    "area": _shoelace(leaf["polygon"]),
                    "area_fraction": _shoelace(leaf["polygon"]) / container_area,
                    "scale": placement.get("scale"),
                    "theta_deg": math.degrees(placement.get("theta", 0.0)),
                    "lines": len(placement.get("lines", [])),
                    "cluster_weight": cluster_weight,
                }
            )
    return rows


def write_report(layout_path: Path, out_dir: Path) -> list[Path]:
    doc = json.loads(Path(layout_path).read_text(encoding="utf-8"))
    rows = _leaf_rows(doc)
    if not rows:
        raise ValueError("layout has no placed words")
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out_dir / "words.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    written.append(csv_path)

    total_weight = sum(r["weight"] for r in rows)
    weights = [r["weight"] / total_weight for r in rows]
    areas = [r["area_fraction"] for r in rows]

    fig, ax = plt.subplots(figsize=(5, 5))
    lim = max(max(weights), max(areas)) * 1.1
    ax.plot([0, lim], [0, lim], color="#999999", linewidth=1, linestyle="--")
    ax.scatter(weights, areas, s=18, color="#4e79a7")
    ax.set_xlabel("weight fraction")
    ax.set_ylabel("cell area fraction")
    ax.set_title("area tracks weight")
    fig.tight_layout()
    fidelity_path = out_dir / "area_fidelity.png"
    fig.savefig(fidelity_path, dpi=120)
    plt.close(fig)
    written.append(fidelity_path)

    scales = sorted((r["scale"] for r in rows if r["scale"] is not None), reverse=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(scales)), scales, color="#59a14f", width=1.0)
    ax.set_xlabel("words (sorted)")
    ax.set_ylabel("font scale (layout units/em)")
    ax.set_title("solved font scales")
    fig.tight_layout()
    scales_path = out_dir / "scale_distribution.png"
    fig.savefig(scales_path, dpi=120)
    plt.close(fig)
    written.append(scales_path)

    stats = doc.get("stats", {})
    runs = stats.get("runs", [])
    if runs:
        fig, ax = plt.subplots(figsize=(6, 4))
        iters = [r["iterations"] for r in runs]
        errs = [r["max_rel_error"] * 100 for r in runs]
        labels = ["root" if r["cluster"] is None else f"c{r['cluster']}" for r in runs]
        ax.bar(labels, iters, color="#4e79a7")
        ax.set_ylabel("iterations", color="#4e79a7")
        ax2 = ax.twinx()
        ax2.plot(labels, errs, color="#e15759", marker="o", linewidth=1.5)
        ax2.set_ylabel("final area error (%)", color="#e15759")
        ax.set_title("tessellation convergence per level")
        fig.tight_layout()
        conv_path = out_dir / "convergence.png"
        fig.savefig(conv_path, dpi=120)
        plt.close(fig)
        written.append(conv_path)

    return written

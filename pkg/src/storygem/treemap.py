"""Weighted centroidal Voronoi treemap over a convex container.

The tessellation is an additively weighted power diagram: generator i owns
the points x with |x - s_i|^2 - w_i minimal, so every cell is the container
clipped by the n-1 radical-axis half-planes and therefore convex with
straight edges (which the label-fit stage requires). The layout loop
iterates: tessellate, nudge each generator's weight toward its target area
(multiplicative factor, clamped to [0.5, 2.0], applied to the squared
equivalent radius), move each generator to its cell centroid. Weights are
kept below the squared nearest-neighbor distance, which guarantees every
generator keeps a nonempty cell; the reset-and-resample recovery path stays
in place for the degenerate remainder.

Everything is driven by an explicit seed: fixed seed, identical layout.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fontfit import Placement
from .geometry import (
    EMPTY_AREA,
    Polygon,
    Vec,
    _area_of,
    _clip_verts,
    _dedup,
    centroid,
    signed_area,
)

WEIGHT_FACTOR_MIN = 0.5
WEIGHT_FACTOR_MAX = 2.0
WEIGHT_PASSES = 3    # weight adjust+retessellate passes per centroid move
NEIGHBOR_CAP = 0.98  # recovery clamps weights below (NEIGHBOR_CAP * nearest distance)^2


@dataclass
class GeneratorState:
    site: Vec
    weight: float
    target_area: float


@dataclass
class CvtStats:
    iterations: int
    max_rel_error: float
    converged: bool

    def as_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "max_rel_error": self.max_rel_error,
            "converged": self.converged,
        }


def default_container(kind: str = "circle", diameter: float = 1000.0) -> Polygon:
    """Built-in drawing spaces; a regular 64-gon stands in for the circle."""
    center = (diameter / 2.0, diameter / 2.0)
    if kind == "circle":
        return Polygon.regular(64, diameter, center)
    if kind == "square":
        return Polygon.rectangle(0.0, 0.0, diameter, diameter)
    raise ValueError(f"unknown container kind {kind!r}")


def _power_cells(container_verts, sites, weights):
    """One clipped cell per generator (None when dominated/empty).

    Per generator the other sites are visited nearest-first; a site whose
    radical axis provably cannot cut the remaining cell is skipped, and once
    that holds for every farther site the scan stops. The pruning is exact,
    so the result equals full O(n^2) clipping.
    """
    n = len(sites)
    if n == 1:
        return [list(container_verts)]
    pts = np.asarray(sites)
    ws = np.asarray(weights)
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    order = np.argsort(d2, axis=1, kind="stable")
    wmax = float(ws.max())

    cells = []
    for i in range(n):
        six, siy = pts[i]
        wi = float(ws[i])
        verts = list(container_verts)
        radius = max(math.hypot(vx - six, vy - siy) for vx, vy in verts)
        empty = False
        for j in order[i]:
            j = int(j)
            if j == i:
                continue
            dist2 = float(d2[i, j])
            if dist2 == 0.0:
                # coincident sites: the lighter one (higher index on ties) loses
                if ws[j] > wi or (ws[j] == wi and j < i):
                    empty = True
                    break
                continue
            dist = math.sqrt(dist2)
            # farthest possible reach of any remaining radical axis
            if 0.5 * (dist + (wi - wmax) / dist) >= radius:
                break
            h = 0.5 * (dist + (wi - float(ws[j])) / dist)
            if h >= radius:
                continue
            ux = (pts[j, 0] - six) / dist
            uy = (pts[j, 1] - siy) / dist
            verts = _clip_verts(verts, ux, uy, ux * six + uy * siy + h)
            if len(verts) < 3 or _area_of(verts) < EMPTY_AREA:
                empty = True
                break
            radius = max(math.hypot(vx - six, vy - siy) for vx, vy in verts)
        cells.append(None if empty else verts)
    return cells


def power_diagram(container: Polygon, gens: Sequence[GeneratorState]) -> list[Polygon | None]:
    """Power-diagram cells in generator order; cells tile the container."""
    if not gens:
        raise ValueError("need at least one generator")
    raw = _power_cells(
        container.vertices,
        [g.site for g in gens],
        [g.weight for g in gens],
    )
    return [
        None if verts is None else Polygon(_dedup(verts), validate=False)
        for verts in raw
    ]


def _sample_inside(container: Polygon, rng: random.Random) -> Vec:
    x0, y0, x1, y1 = container.bounds
    verts = container.vertices
    for _ in range(10_000):
        x = rng.uniform(x0, x1)
        y = rng.uniform(y0, y1)
        if _inside(verts, x, y):
            return (x, y)
    return centroid(container)


def _inside(verts, x, y) -> bool:
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < 0.0:
            return False
    return True


def _cap_weights(sites: np.ndarray, ws: np.ndarray) -> None:
    """Clamp each weight below its squared nearest-neighbor distance so every
    generator keeps a neighborhood of its own site."""
    n = len(sites)
    if n < 2:
        return
    d2 = ((sites[:, None, :] - sites[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, np.inf)
    cap = (NEIGHBOR_CAP**2) * d2.min(axis=1)
    np.minimum(ws, cap, out=ws)


def _diagram_with_recovery(container, sites, ws, rng):
    """Tessellate; when a generator still comes out empty, reset its weight to
    zero and re-seed its site near the largest cell's centroid, then retry."""
    for attempt in range(32):
        cells = _power_cells(container.vertices, sites, ws)
        empties = [i for i, c in enumerate(cells) if c is None]
        if not empties:
            return cells
        areas = [(_area_of(c) if c else -1.0) for c in cells]
        big = int(np.argmax(areas))
        bx, by = centroid(Polygon(cells[big], validate=False))
        jitter = 0.05 * math.sqrt(max(areas[big], 1e-12)) * (attempt + 1)
        for i in empties:
            ws[i] = 0.0
            for _ in range(100):
                cand = (bx + rng.uniform(-jitter, jitter), by + rng.uniform(-jitter, jitter))
                if _inside(container.vertices, *cand):
                    sites[i] = cand
                    break
            else:
                sites[i] = (bx, by)
        _cap_weights(sites, ws)
    raise RuntimeError("tessellation failed to recover from empty cells")


def cvt_layout(
    container: Polygon,
    targets: Sequence[float],
    seed: int,
    *,
    max_iter: int = 300,
    area_tol: float = 0.02,
    damping: float = 1.0,
) -> tuple[list[Polygon], CvtStats]:
    """Partition the container into convex cells with areas matching the
    targets (rescaled to the container area) within area_tol relative error.

    Non-convergence is not an error; the stats carry the convergence flag and
    the caller decides.
    """
    if not targets:
        raise ValueError("need at least one target")
    if any(t <= 0 for t in targets):
        raise ValueError("targets must be positive")

    total_area = signed_area(container)
    scale = total_area / float(sum(targets))
    goal = np.array([t * scale for t in targets])
    n = len(goal)

    if n == 1:
        return [container], CvtStats(iterations=0, max_rel_error=0.0, converged=True)

    rng = random.Random(seed)
    sites = np.array([_sample_inside(container, rng) for _ in range(n)])
    # equivalent-radius formulation: the weight is a squared radius, floored
    # at a sliver of the target's equivalent radius so the multiplicative
    # update always has traction (a zeroed weight could never grow back)
    r0 = 1e-3 * math.sqrt(total_area / (n * math.pi))
    ws = np.full(n, r0 * r0)
    floor = 1e-3 * goal / math.pi

    def tessellate():
        cells = _diagram_with_recovery(container, sites, ws, rng)
        areas = np.array([_area_of(c) for c in cells])
        return cells, areas, float(np.max(np.abs(areas - goal) / goal))

    cells_raw, areas, err = tessellate()
    iterations = 0
    while err > area_tol and iterations < max_iter:
        # weights are adjusted over a few passes, retessellating after each,
        # before the sites move: adjusting against fresh areas is what keeps
        # the weight updates and the centroid moves from fighting each other
        for _ in range(WEIGHT_PASSES):
            factors = np.clip(goal / areas, WEIGHT_FACTOR_MIN, WEIGHT_FACTOR_MAX)
            ws = np.maximum(ws, floor) * factors
            cells_raw, areas, err = tessellate()
            if err <= area_tol:
                break
        if err <= area_tol:
            break
        centroids = np.array([centroid(Polygon(c, validate=False)) for c in cells_raw])
        sites += damping * (centroids - sites)
        cells_raw, areas, err = tessellate()
        iterations += 1

    cells = [Polygon(_dedup(c), validate=False) for c in cells_raw]
    return cells, CvtStats(
        iterations=iterations, max_rel_error=err, converged=err <= area_tol
    )


@dataclass
class CellNode:
    """One solved region: a cluster cell (with children) or a word cell."""

    polygon: Polygon
    color_index: int
    weight: float
    word_index: int | None = None
    word: str | None = None
    placement: Placement | None = None
    children: list["CellNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return self.word_index is not None

    def to_json_dict(self) -> dict:
        out: dict = {
            "polygon": [[x, y] for x, y in self.polygon.vertices],
            "color": self.color_index,
            "weight": self.weight,
        }
        if self.is_leaf:
            out["word_index"] = self.word_index
            if self.word is not None:
                out["word"] = self.word
            if self.placement is not None:
                out["placement"] = self.placement.to_json_dict()
        if self.children:
            out["children"] = [c.to_json_dict() for c in self.children]
        return out


@dataclass
class LayoutDocument:
    """The full solved treemap: container, nested cells, layout statistics."""

    container: Polygon
    cells: list[CellNode]
    stats: dict
    meta: dict = field(default_factory=dict)

    def leaves(self) -> list[CellNode]:
        out: list[CellNode] = []

        def walk(node: CellNode):
            if node.is_leaf:
                out.append(node)
            for child in node.children:
                walk(child)

        for cell in self.cells:
            walk(cell)
        return out

    def to_json_dict(self) -> dict:
        return {
            "container": [[x, y] for x, y in self.container.vertices],
            "cells": [c.to_json_dict() for c in self.cells],
            "stats": self.stats,
            "meta": self.meta,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False, indent=indent)


def _child_seed(seed: int, index: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + (index + 1) * 0xBF58476D1CE4E5B9) % (1 << 63)


def layout_tree(tree, container: Polygon, seed: int, **cvt_opts) -> LayoutDocument:
    """Hierarchical layout: one tessellation over the top-level clusters,
    then one inside each cluster cell over its word leaves."""
    clusters = tree.root.children
    if not clusters:
        raise ValueError("empty cluster tree")

    cluster_cells, root_stats = cvt_layout(
        container, [c.weight for c in clusters], seed, **cvt_opts
    )
    runs = [{"level": 0, "cluster": None, **root_stats.as_dict()}]

    nodes = []
    worst = root_stats.max_rel_error
    converged = root_stats.converged
    for idx, (cluster, cell) in enumerate(zip(clusters, cluster_cells)):
        leaf_cells, stats = cvt_layout(
            cell,
            [leaf.weight for leaf in cluster.children],
            _child_seed(seed, idx),
            **cvt_opts,
        )
        runs.append({"level": 1, "cluster": idx, **stats.as_dict()})
        worst = max(worst, stats.max_rel_error)
        converged = converged and stats.converged

        children = [
            CellNode(
                polygon=leaf_cell,
                color_index=cluster.color_index,
                weight=leaf.weight,
                word_index=leaf.word_index,
            )
            for leaf, leaf_cell in zip(cluster.children, leaf_cells)
        ]
        nodes.append(
            CellNode(
                polygon=cell,
                color_index=cluster.color_index,
                weight=cluster.weight,
                children=children,
            )
        )

    stats = {
        "seed": seed,
        "levels": 2,
        "max_rel_area_error": worst,
        "converged": converged,
        "runs": runs,
    }
    return LayoutDocument(container=container, cells=nodes, stats=stats)

#!/usr/bin/env python3
"""Brute-force oracle for the maximum-scale rectangle-in-convex-polygon fit.

For each seeded instance the best scale is found by bisection; feasibility of
a candidate scale is decided by an exhaustive translation grid (2000 x 2000
over the outer polygon's bounding box). A translation d is feasible when all
four scaled rectangle corners satisfy every edge inequality of the outer
polygon. This is deliberately dumb and slow; it shares no code with the
package's LP path.

Writes tests/data/lp_oracle.json. Run once, commit the result:

    python tools/lp_oracle.py
"""

import json
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))
from lp_instances import BASE_SEED, N_INSTANCES, make_instance  # noqa: E402

GRID = 2000


def edge_inequalities(poly):
    """Inward half-plane form a*x + b*y <= c for a CCW polygon."""
    rows = []
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        # Outward normal of a CCW edge is (dy, -dx).
        a, b = (y2 - y1), -(x2 - x1)
        c = a * x1 + b * y1
        rows.append((a, b, c))
    return np.array(rows)


def feasible(scale, inner, edges, gx, gy):
    ok = np.ones(gx.shape, dtype=bool)
    for a, b, c in edges:
        # max over rectangle corners of the edge functional, at this scale
        corner_max = float(np.max(a * scale * inner[:, 0] + b * scale * inner[:, 1]))
        ok &= (a * gx + b * gy) <= (c - corner_max)
        if not ok.any():
            return False
    return bool(ok.any())


def best_scale(inner, outer):
    edges = edge_inequalities(outer)
    xs = np.linspace(outer[:, 0].min(), outer[:, 0].max(), GRID)
    ys = np.linspace(outer[:, 1].min(), outer[:, 1].max(), GRID)
    gx, gy = np.meshgrid(xs, ys)

    lo = 0.0
    hi = 1.0
    while feasible(hi, inner, edges, gx, gy):
        lo = hi
        hi *= 2.0
        if hi > 1e6:
            raise RuntimeError("unbounded fit?")
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if feasible(mid, inner, edges, gx, gy):
            lo = mid
        else:
            hi = mid
    return lo


def main():
    out = []
    for i in range(N_INSTANCES):
        inner, outer = make_instance(BASE_SEED + i)
        s = best_scale(inner, outer)
        out.append({"index": i, "seed": BASE_SEED + i, "scale": s})
        print(f"instance {i:2d}  n={len(outer)}  scale={s:.6f}", flush=True)

    path = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "lp_oracle.json")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as fh:
        json.dump({"grid": GRID, "bisections": 30, "instances": out}, fh, indent=1)
    print(f"wrote {os.path.normpath(path)}")


if __name__ == "__main__":
    main()

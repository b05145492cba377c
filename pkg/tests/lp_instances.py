"""Seeded rectangle-in-convex-polygon instances shared by the fit tests and the
brute-force oracle in tools/lp_oracle.py. No package imports: the oracle must
stay independent of the code it checks."""

import numpy as np

BASE_SEED = 20240
N_INSTANCES = 50


def make_instance(seed):
    """One (inner rectangle, outer convex polygon) pair.

    The outer polygon is an anisotropically scaled, rotated circle polygon:
    affine images of convex polygons stay convex and keep their vertex count.
    Vertices come out counter-clockwise. Coordinates are O(100) to mimic
    layout units.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 11))

    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, n))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2.0 * np.pi]]))
        if gaps.min() > 0.15:
            break

    radius = 100.0 * rng.uniform(0.8, 1.2)
    sx = rng.uniform(0.6, 1.8)
    sy = rng.uniform(0.6, 1.8)
    phi = rng.uniform(0.0, np.pi)

    x = sx * radius * np.cos(angles)
    y = sy * radius * np.sin(angles)
    c, s = np.cos(phi), np.sin(phi)
    outer = np.column_stack([c * x - s * y, s * x + c * y])

    w = rng.uniform(0.5, 3.0)
    h = rng.uniform(0.3, 1.2)
    inner = np.array([[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]])
    return inner, outer


def all_instances():
    return [make_instance(BASE_SEED + i) for i in range(N_INSTANCES)]

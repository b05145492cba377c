import random

import numpy as np
import pytest
from shapely.geometry import Polygon as ShapelyPolygon

from storygem.cluster import ClusterNode, ClusterTree
from storygem.geometry import Polygon, contains, signed_area
from storygem.treemap import (
    GeneratorState,
    cvt_layout,
    default_container,
    layout_tree,
    power_diagram,
)


def shapely_of(poly):
    return ShapelyPolygon(list(poly.vertices))


SQUARE = Polygon.rectangle(-2.0, -2.0, 2.0, 2.0)


def test_single_generator_owns_container():
    cells = power_diagram(SQUARE, [GeneratorState(site=(0.3, 0.1), weight=0.0, target_area=1.0)])
    assert len(cells) == 1
    assert signed_area(cells[0]) == pytest.approx(signed_area(SQUARE), rel=1e-12)


def test_two_equal_generators_split_symmetrically():
    gens = [
        GeneratorState(site=(-1.0, 0.0), weight=0.0, target_area=1.0),
        GeneratorState(site=(1.0, 0.0), weight=0.0, target_area=1.0),
    ]
    left, right = power_diagram(SQUARE, gens)
    half = signed_area(SQUARE) / 2.0
    assert signed_area(left) == pytest.approx(half, rel=1e-9)
    assert signed_area(right) == pytest.approx(half, rel=1e-9)
    # mirror image across x=0
    mirrored = {(round(-x, 9), round(y, 9)) for x, y in right.vertices}
    assert {(round(x, 9), round(y, 9)) for x, y in left.vertices} == mirrored


def test_dominated_generator_empty():
    gens = [
        GeneratorState(site=(0.0, 0.0), weight=100.0, target_area=1.0),
        GeneratorState(site=(0.1, 0.0), weight=0.0, target_area=1.0),
    ]
    cells = power_diagram(SQUARE, gens)
    assert cells[1] is None
    assert signed_area(cells[0]) == pytest.approx(signed_area(SQUARE), rel=1e-12)


def test_power_diagram_matches_raster_oracle():
    # 400x400 nearest-power-site rasterization; agreement within 1% of the
    # container area per cell
    rng = np.random.default_rng(2024)
    box = Polygon.rectangle(0.0, 0.0, 1000.0, 1000.0)
    sites = rng.uniform(100, 900, (5, 2))
    weights = rng.uniform(0, 200.0**2, 5)
    gens = [
        GeneratorState(site=(float(x), float(y)), weight=float(w), target_area=1.0)
        for (x, y), w in zip(sites, weights)
    ]
    cells = power_diagram(box, gens)

    px = (np.arange(400) + 0.5) * 2.5
    gx, gy = np.meshgrid(px, px)
    power = (
        (gx[None, :, :] - sites[:, 0, None, None]) ** 2
        + (gy[None, :, :] - sites[:, 1, None, None]) ** 2
        - weights[:, None, None]
    )
    owner = np.argmin(power, axis=0)
    pixel_area = 2.5 * 2.5
    total = signed_area(box)
    for i, cell in enumerate(cells):
        raster_area = float((owner == i).sum()) * pixel_area
        cell_area = signed_area(cell) if cell is not None else 0.0
        assert abs(raster_area - cell_area) <= 0.01 * total


def test_tiling_and_disjointness():
    rng = np.random.default_rng(7)
    box = Polygon.rectangle(0.0, 0.0, 100.0, 100.0)
    gens = [
        GeneratorState(
            site=(float(rng.uniform(5, 95)), float(rng.uniform(5, 95))),
            weight=float(rng.uniform(0, 100)),
            target_area=1.0,
        )
        for _ in range(12)
    ]
    cells = power_diagram(box, gens)
    total = signed_area(box)
    covered = sum(signed_area(c) for c in cells if c is not None)
    assert covered == pytest.approx(total, rel=1e-6)

    shapes = [shapely_of(c) for c in cells if c is not None]
    for i in range(len(shapes)):
        for j in range(i + 1, len(shapes)):
            assert shapes[i].intersection(shapes[j]).area < 1e-9 * total


def test_cvt_single_target_returns_container():
    cells, stats = cvt_layout(SQUARE, [1.0], seed=42)
    assert cells == [SQUARE]
    assert stats.iterations == 0
    assert stats.converged


def test_cvt_two_equal_targets():
    cells, stats = cvt_layout(SQUARE, [1.0, 1.0], seed=42)
    assert stats.converged
    half = signed_area(SQUARE) / 2.0
    for cell in cells:
        assert abs(signed_area(cell) - half) / half <= 0.02


def test_cvt_dominant_target():
    cells, stats = cvt_layout(SQUARE, [4.0, 1.0, 1.0, 1.0, 1.0], seed=42)
    assert stats.converged
    dominant = signed_area(cells[0])
    want = signed_area(SQUARE) * 0.5
    assert abs(dominant - want) / want <= 0.02


def test_cvt_rejects_bad_targets():
    with pytest.raises(ValueError):
        cvt_layout(SQUARE, [], seed=1)
    with pytest.raises(ValueError):
        cvt_layout(SQUARE, [1.0, 0.0], seed=1)


def test_cvt_deterministic():
    a, _ = cvt_layout(SQUARE, [3.0, 2.0, 1.0], seed=99)
    b, _ = cvt_layout(SQUARE, [3.0, 2.0, 1.0], seed=99)
    assert [c.vertices for c in a] == [c.vertices for c in b]


def test_cvt_cells_convex_and_inside():
    container = default_container("circle", 1000.0)
    cells, _ = cvt_layout(container, [5, 3, 2, 1, 1, 1], seed=3)
    for cell in cells:
        Polygon(cell.vertices)  # validates convexity + CCW
        for v in cell.vertices:
            assert contains(container, v, tol=1e-6)


def tiny_tree(weights_by_cluster):
    clusters = []
    idx = 0
    for color, weights in enumerate(weights_by_cluster):
        leaves = [ClusterNode(weight=w, word_index=idx + k) for k, w in enumerate(weights)]
        idx += len(weights)
        clusters.append(
            ClusterNode(weight=sum(weights), children=leaves, color_index=color)
        )
    root = ClusterNode(weight=sum(c.weight for c in clusters), children=clusters)
    return ClusterTree(root=root, weighting="linear")


def test_layout_tree_single_word():
    doc = layout_tree(tiny_tree([[1.0]]), SQUARE, seed=5)
    assert doc.cells[0].polygon == SQUARE
    assert doc.cells[0].children[0].polygon == SQUARE
    assert doc.stats["converged"]


def test_layout_tree_cluster_ratio():
    doc = layout_tree(tiny_tree([[2.0, 1.0], [0.5, 0.5]]), SQUARE, seed=11)
    a0 = signed_area(doc.cells[0].polygon)
    a1 = signed_area(doc.cells[1].polygon)
    assert a0 / (a0 + a1) == pytest.approx(0.75, abs=0.02)
    assert doc.stats["converged"]


def test_layout_tree_invariants():
    rng = random.Random(8)
    weights = [[rng.uniform(0.5, 5) for _ in range(rng.randint(2, 6))] for _ in range(4)]
    doc = layout_tree(tiny_tree(weights), default_container("circle"), seed=21)

    total = signed_area(doc.container)
    cluster_sum = sum(signed_area(c.polygon) for c in doc.cells)
    assert cluster_sum == pytest.approx(total, rel=1e-4)

    for cell in doc.cells:
        leaf_sum = sum(signed_area(ch.polygon) for ch in cell.children)
        assert leaf_sum == pytest.approx(signed_area(cell.polygon), rel=1e-4)

    leaves = doc.leaves()
    assert sorted(leaf.word_index for leaf in leaves) == list(range(len(leaves)))

    shapes = [shapely_of(leaf.polygon) for leaf in leaves]
    for i in range(len(shapes)):
        for j in range(i + 1, len(shapes)):
            assert shapes[i].intersection(shapes[j]).area < 1e-6 * total


def test_layout_document_json_roundtrip():
    doc = layout_tree(tiny_tree([[1.0, 2.0]]), SQUARE, seed=1)
    import json

    data = json.loads(doc.to_json())
    assert data["container"]
    assert data["cells"][0]["children"][0]["word_index"] == 0
    assert data["stats"]["levels"] == 2

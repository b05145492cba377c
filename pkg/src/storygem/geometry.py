"""Convex polygon primitives.

Everything downstream (the treemap tessellation and the label-fit LP) works on
convex polygons with counter-clockwise vertex order. Polygons are value
objects: every operation returns a new one. Coordinates live in layout units;
the default container is ~1000 units across, and the global tolerance EPS is
chosen for that scale.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

Vec = tuple[float, float]

EPS = 1e-9          # degeneracy tolerance, layout units
EMPTY_AREA = 1e-12  # clip results below this area count as empty


class GeometryError(ValueError):
    pass


class DegenerateInput(GeometryError):
    """Raised when input points cannot form a proper convex polygon."""


class Polygon:
    """Immutable convex polygon, CCW, at least 3 distinct vertices."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[Vec], validate: bool = True):
        verts = tuple((float(x), float(y)) for x, y in vertices)
        verts = _dedup(verts)
        if validate:
            _check_convex_ccw(verts)
        object.__setattr__(self, "vertices", verts)

    def __setattr__(self, name, value):
        raise AttributeError("Polygon is immutable")

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polygon({list(self.vertices)!r})"

    @property
    def area(self) -> float:
        return signed_area(self)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @classmethod
    def regular(cls, sides: int, diameter: float, center: Vec = (0.0, 0.0)) -> "Polygon":
        """Regular polygon approximating a circle of the given diameter."""
        if sides < 3:
            raise GeometryError("need at least 3 sides")
        r = diameter / 2.0
        cx, cy = center
        pts = []
        for i in range(sides):
            a = 2.0 * math.pi * i / sides
            pts.append((cx + r * math.cos(a), cy + r * math.sin(a)))
        return cls(pts, validate=False)

    @classmethod
    def rectangle(cls, x0: float, y0: float, x1: float, y1: float) -> "Polygon":
        if x1 <= x0 or y1 <= y0:
            raise GeometryError("rectangle needs positive extent")
        return cls([(x0, y0), (x1, y0), (x1, y1), (x0, y1)], validate=False)


def _dedup(verts: Sequence[Vec]) -> tuple[Vec, ...]:
    """Drop consecutive vertices that coincide within a scale-relative tolerance."""
    if not verts:
        return ()
    span = max(
        max(abs(v[0]) for v in verts),
        max(abs(v[1]) for v in verts),
        1.0,
    )
    tol = EPS * span
    out: list[Vec] = []
    for v in verts:
        if out and abs(v[0] - out[-1][0]) <= tol and abs(v[1] - out[-1][1]) <= tol:
            continue
        out.append(v)
    while len(out) > 1 and abs(out[0][0] - out[-1][0]) <= tol and abs(out[0][1] - out[-1][1]) <= tol:
        out.pop()
    return tuple(out)


def _check_convex_ccw(verts: Sequence[Vec]) -> None:
    n = len(verts)
    if n < 3:
        raise DegenerateInput(f"polygon needs >= 3 distinct vertices, got {n}")
    # Scale-relative slack: cross products of consecutive edges compare
    # against -EPS * scale^2.
    minx = min(v[0] for v in verts)
    maxx = max(v[0] for v in verts)
    miny = min(v[1] for v in verts)
    maxy = max(v[1] for v in verts)
    scale2 = max((maxx - minx) ** 2 + (maxy - miny) ** 2, 1e-30)
    slack = -EPS * scale2
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        cx, cy = verts[(i + 2) % n]
        cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if cross < slack:
            raise DegenerateInput("polygon not convex/CCW")
    if _area_of(verts) <= 0.0:
        raise DegenerateInput("polygon has non-positive area (CW order?)")


def _area_of(verts: Sequence[Vec]) -> float:
    total = 0.0
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return 0.5 * total


def signed_area(poly: Polygon) -> float:
    """Shoelace area; positive for the CCW polygons we build."""
    return _area_of(poly.vertices)


def centroid(poly: Polygon) -> Vec:
    """Area centroid via the standard polygon-centroid formula."""
    verts = poly.vertices
    a = 0.0
    cx = 0.0
    cy = 0.0
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        w = x1 * y2 - x2 * y1
        a += w
        cx += (x1 + x2) * w
        cy += (y1 + y2) * w
    if abs(a) < 1e-30:
        # Fall back to the vertex mean for near-degenerate slivers.
        return (sum(v[0] for v in verts) / n, sum(v[1] for v in verts) / n)
    return (cx / (3.0 * a), cy / (3.0 * a))


def _clip_verts(verts: Sequence[Vec], a: float, b: float, c: float) -> list[Vec]:
    """Sutherland-Hodgman step against the half-plane a*x + b*y <= c."""
    out: list[Vec] = []
    n = len(verts)
    if n == 0:
        return out
    px, py = verts[-1]
    pd = a * px + b * py - c
    for vx, vy in verts:
        vd = a * vx + b * vy - c
        if vd <= 0.0:
            if pd > 0.0:
                t = pd / (pd - vd)
                out.append((px + t * (vx - px), py + t * (vy - py)))
            out.append((vx, vy))
        elif pd <= 0.0:
            t = pd / (pd - vd)
            out.append((px + t * (vx - px), py + t * (vy - py)))
        px, py, pd = vx, vy, vd
    return out


def clip_halfplane(poly: Polygon, a: float, b: float, c: float) -> Polygon | None:
    """Intersect with the half-plane a*x + b*y <= c; None when (nearly) empty."""
    if a == 0.0 and b == 0.0:
        raise GeometryError("half-plane normal must be nonzero")
    out = _clip_verts(poly.vertices, a, b, c)
    if len(out) < 3:
        return None
    out = _dedup(out)
    if len(out) < 3 or _area_of(out) < EMPTY_AREA:
        return None
    return Polygon(out, validate=False)


def convex_hull(points: Iterable[Vec]) -> Polygon:
    """Andrew's monotone chain. Collinear interior points are dropped; all-collinear
    input raises DegenerateInput."""
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) < 3:
        raise DegenerateInput("hull needs >= 3 distinct points")

    def build(seq):
        chain: list[Vec] = []
        for p in seq:
            # pop on cross <= 0: exactly-collinear interior points are dropped,
            # genuine (if tiny) left turns are kept
            while len(chain) >= 2:
                ox, oy = chain[-2]
                ax, ay = chain[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 0.0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("all points collinear")
    return Polygon(hull, validate=False)


def contains(poly: Polygon, point: Vec, tol: float = EPS) -> bool:
    """True when the point sits on the inner side of every edge, within a
    signed distance of -tol."""
    px, py = point
    verts = poly.vertices
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        cross = ex * (py - ay) - ey * (px - ax)
        if cross < -tol * math.hypot(ex, ey):
            return False
    return True


def rotate(points: Iterable[Vec], theta: float, pivot: Vec = (0.0, 0.0)) -> list[Vec]:
    """Rigid rotation of points about a pivot, angle in radians (CCW)."""
    c = math.cos(theta)
    s = math.sin(theta)
    px, py = pivot
    out = []
    for x, y in points:
        dx, dy = x - px, y - py
        out.append((px + c * dx - s * dy, py + s * dx + c * dy))
    return out


def distance_to_boundary(poly: Polygon, point: Vec) -> float:
    """Radius of the largest circle centered at an interior point that stays
    inside the polygon: the minimum perpendicular distance to the edge lines."""
    px, py = point
    verts = poly.vertices
    n = len(verts)
    best = math.inf
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        length = math.hypot(ex, ey)
        if length < 1e-30:
            continue
        d = (ex * (py - ay) - ey * (px - ax)) / length
        best = min(best, d)
    return best

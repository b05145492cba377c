"""Maximum-scale word placement inside a convex cell.

The geometric problem: place a scaled, translated copy of the word's convex
hull inside the cell so the scale factor is as large as possible. With the
rotation angle fixed, this is a linear program over convex-combination
coefficients: each transformed hull vertex q_i is written as
q_i = sum_j lambda_ij * p_j over the cell vertices p_j (lambda >= 0, rows
summing to 1), extra equality rows pin all q_i to one similarity transform of
the hull, and the objective maximizes the horizontal spread of the reference
vertex pair, which is proportional to the scale.

Rotation is handled by sweeping angles in [-90 deg, +90 deg] and re-solving;
hyphenation by enumerating subsets of the word's syllable break positions and
rebuilding the hull as stacked lines. The best scale wins; ties prefer the
smaller |angle|, then fewer hyphens.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .geometry import (
    Polygon,
    Vec,
    centroid,
    convex_hull,
    distance_to_boundary,
    rotate,
)
from .lp import simplex_maximize

DEGENERATE_AREA = 1e-9   # cells below this area are unusable
MIN_EM = 1.0             # default layout-scale clamp for sliver cells
_SCALE_TIE_REL = 1e-9    # scales within this relative band count as tied

VOWELS = frozenset("aeiouy")


class FitError(Exception):
    pass


class InfeasibleCell(FitError):
    """The cell polygon is degenerate (area below the global tolerance)."""


@dataclass(frozen=True)
class FontMetrics:
    """Per-character advance widths plus vertical metrics, at em size 1."""

    name: str
    ascent: float
    descent: float
    line_gap: float
    advances: dict[str, float]

    def __post_init__(self):
        if self.ascent <= 0 or self.descent > 0:
            raise ValueError("expected ascent > 0 >= descent")
        if not self.advances or any(a <= 0 for a in self.advances.values()):
            raise ValueError("advances must be positive")

    @property
    def default_advance(self) -> float:
        return sum(self.advances.values()) / len(self.advances)

    @property
    def line_height(self) -> float:
        return self.ascent - self.descent

    @property
    def line_advance(self) -> float:
        return self.line_height + self.line_gap

    def line_width(self, text: str) -> tuple[float, list[str]]:
        """Total advance width of a text line plus unknown-character warnings."""
        width = 0.0
        unknown = []
        for ch in text:
            adv = self.advances.get(ch)
            if adv is None:
                unknown.append(ch)
                adv = self.default_advance
            width += adv
        return width, unknown


def load_metrics(font: str | Path = "sans") -> FontMetrics:
    """Load bundled metrics by id, or any metrics JSON by path."""
    path = Path(font)
    if path.suffix == ".json" and path.exists():
        raw = json.loads(path.read_text(encoding="utf-8"))
    else:
        res = resources.files("storygem").joinpath(f"resources/fonts/{font}.json")
        try:
            raw = json.loads(res.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise FitError(f"unknown font metrics: {font!r}") from None
    return FontMetrics(
        name=raw.get("name", str(font)),
        ascent=float(raw["ascent"]),
        descent=float(raw["descent"]),
        line_gap=float(raw["line_gap"]),
        advances={k: float(v) for k, v in raw["advances"].items()},
    )


@dataclass(frozen=True)
class WordShape:
    """A word's drawing extent at em size 1 for one hyphenation pattern.

    First line's baseline sits at y = 0; subsequent lines stack below it,
    left-aligned. The hull is the convex hull of all line rectangles, so it
    never underestimates the drawn extent.
    """

    hull: Polygon
    breaks: tuple[int, ...]
    lines: tuple[str, ...]
    line_offsets: tuple[float, ...]  # baseline y per line
    unknown_chars: tuple[str, ...] = ()


def word_hull(word: str, breaks, metrics: FontMetrics) -> WordShape:
    """Build the stacked-line hull for a word split at the given positions.

    Every line except the last carries a trailing hyphen, which counts toward
    its width: the optimized hull must cover what actually gets drawn.
    """
    if not word:
        raise ValueError("empty word")
    breaks = tuple(sorted(int(b) for b in breaks))
    if any(b <= 0 or b >= len(word) for b in breaks) or len(set(breaks)) != len(breaks):
        raise ValueError(f"invalid break positions {breaks} for {word!r}")

    pieces = []
    prev = 0
    for b in breaks:
        pieces.append(word[prev:b])
        prev = b
    pieces.append(word[prev:])
    lines = tuple(p + "-" for p in pieces[:-1]) + (pieces[-1],)

    corners: list[Vec] = []
    offsets = []
    unknown: list[str] = []
    for k, line in enumerate(lines):
        width, missing = metrics.line_width(line)
        unknown.extend(missing)
        base = -k * metrics.line_advance
        offsets.append(base)
        lo, hi = base + metrics.descent, base + metrics.ascent
        corners.extend([(0.0, lo), (width, lo), (width, hi), (0.0, hi)])

    return WordShape(
        hull=convex_hull(corners),
        breaks=breaks,
        lines=lines,
        line_offsets=tuple(offsets),
        unknown_chars=tuple(dict.fromkeys(unknown)),
    )


@dataclass(frozen=True)
class Placement:
    """Solved transform for one word: q = scale * R(theta) @ p + (dx, dy),
    applied to the word shape's reference coordinates."""

    word: str
    scale: float
    dx: float
    dy: float
    theta: float  # radians, in [-pi/2, pi/2]
    breaks: tuple[int, ...]
    lines: tuple[str, ...]
    line_offsets: tuple[float, ...]
    lam: np.ndarray | None = field(repr=False, default=None)
    overflow: bool = False

    def transform(self, points) -> list[Vec]:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return [
            (
                self.scale * (c * x - s * y) + self.dx,
                self.scale * (s * x + c * y) + self.dy,
            )
            for x, y in points
        ]

    def to_json_dict(self) -> dict:
        return {
            "scale": self.scale,
            "dx": self.dx,
            "dy": self.dy,
            "theta": self.theta,
            "lines": list(self.lines),
        }


@dataclass(frozen=True)
class FitSolution:
    scale: float
    offset: Vec
    lam: np.ndarray
    transformed: list[Vec]


def solve_fit_lp(inner: Polygon, outer: Polygon) -> FitSolution:
    """Largest scaled+translated copy of `inner` that fits inside `outer`.

    The reference vertex pair of the inner hull is the one with maximal
    x-difference, which keeps the scale recovery well conditioned. The outer
    polygon is normalized to unit size around its centroid before the solve so
    tableau entries stay O(1).
    """
    if outer.area < DEGENERATE_AREA:
        raise InfeasibleCell(f"cell area {outer.area:.3e} below tolerance")

    o = list(inner.vertices)
    m = len(o)
    i1 = min(range(m), key=lambda i: (o[i][0], i))
    i2 = max(range(m), key=lambda i: (o[i][0], -i))
    if o[i2][0] - o[i1][0] <= 0.0:
        raise FitError("inner hull has no horizontal extent")
    order = [i1, i2] + [i for i in range(m) if i not in (i1, i2)]
    ox = [o[i][0] for i in order]
    oy = [o[i][1] for i in order]

    cpx, cpy = centroid(outer)
    x0, y0, x1, y1 = outer.bounds
    span = max(x1 - x0, y1 - y0)
    px = np.array([(vx - cpx) / span for vx, vy in outer.vertices])
    py = np.array([(vy - cpy) / span for vx, vy in outer.vertices])
    n = len(px)

    nvar = m * n
    rows: list[np.ndarray] = []
    rhs: list[float] = []

    def lam_cols(i):
        return slice(i * n, (i + 1) * n)

    for i in range(m):
        row = np.zeros(nvar)
        row[lam_cols(i)] = 1.0
        rows.append(row)
        rhs.append(1.0)

    dx21 = ox[1] - ox[0]
    for i in range(2, m):
        # horizontal shape row:
        # (x2-x1) x^q_i - (x2-x_i) x^q_1 + (x1-x_i) x^q_2 = 0
        row = np.zeros(nvar)
        row[lam_cols(i)] = dx21 * px
        row[lam_cols(0)] = -(ox[1] - ox[i]) * px
        row[lam_cols(1)] += (ox[0] - ox[i]) * px
        rows.append(row)
        rhs.append(0.0)

    for i in range(1, m):
        # vertical shape row, tying the vertical offsets to the same scale:
        # (x2-x1)(y^q_i - y^q_1) = (x^q_2 - x^q_1)(y_i - y_1)
        row = np.zeros(nvar)
        row[lam_cols(i)] = dx21 * py
        row[lam_cols(0)] = -dx21 * py + (oy[i] - oy[0]) * px
        row[lam_cols(1)] += (oy[0] - oy[i]) * px
        rows.append(row)
        rhs.append(0.0)

    obj = np.zeros(nvar)
    obj[lam_cols(1)] = px
    obj[lam_cols(0)] -= px

    lam_flat, z = simplex_maximize(obj, np.array(rows), np.array(rhs))
    lam_lp = lam_flat.reshape(m, n)

    qx = lam_lp @ px * span + cpx
    qy = lam_lp @ py * span + cpy
    scale = z * span / dx21
    dx = qx[0] - scale * ox[0]
    dy = qy[0] - scale * oy[0]

    lam = np.empty_like(lam_lp)
    transformed: list[Vec] = [(0.0, 0.0)] * m
    for lp_row, orig in enumerate(order):
        lam[orig] = lam_lp[lp_row]
        transformed[orig] = (float(qx[lp_row]), float(qy[lp_row]))

    return FitSolution(scale=float(scale), offset=(float(dx), float(dy)),
                       lam=lam, transformed=transformed)


def syllable_breaks(word: str) -> list[int]:
    """Heuristic hyphenation points: after a vowel group, split a following
    consonant run before its last consonant-vowel onset (V-CV, VC-CV). Breaks
    never land inside the first 2 or last 3 characters."""
    n = len(word)
    candidates = []
    i = 0
    while i < n:
        if word[i] in VOWELS:
            # end of this vowel group
            j = i
            while j < n and word[j] in VOWELS:
                j += 1
            # consonant run up to the next vowel group
            k = j
            while k < n and word[k] not in VOWELS:
                k += 1
            if k < n and k > j:
                candidates.append(j if k - j == 1 else j + 1)
            i = k
        else:
            i += 1
    return [b for b in candidates if 2 <= b <= n - 3]


def _prioritized_breaks(word: str, max_breaks: int) -> list[int]:
    breaks = syllable_breaks(word)
    if len(breaks) <= max_breaks:
        return breaks
    mid = len(word) / 2.0
    keep = sorted(breaks, key=lambda b: (abs(b - mid), b))[:max_breaks]
    return sorted(keep)


def _angles(step_deg: float, lo_deg: float, hi_deg: float) -> list[float]:
    if step_deg <= 0:
        raise ValueError("rotation step must be positive")
    ks = range(math.ceil(lo_deg / step_deg), math.floor(hi_deg / step_deg) + 1)
    out = {round(k * step_deg, 9) for k in ks}
    out.add(0.0)
    return sorted(out)


def _finalize(placement: Placement, min_em: float) -> Placement:
    if min_em <= 0.0 or placement.scale >= min_em:
        return placement
    # Sliver cell: clamp to the minimum readable em and flag the overflow
    # instead of failing; the renderer warns.
    return Placement(
        word=placement.word,
        scale=min_em,
        dx=placement.dx,
        dy=placement.dy,
        theta=placement.theta,
        breaks=placement.breaks,
        lines=placement.lines,
        line_offsets=placement.line_offsets,
        lam=placement.lam,
        overflow=True,
    )


def fit_word(
    word: str,
    cell: Polygon,
    metrics: FontMetrics,
    *,
    rotation: bool = True,
    rotation_step: float = 3.0,
    rotation_range: tuple[float, float] = (-90.0, 90.0),
    hyphenate: bool = True,
    max_breaks: int = 4,
    min_em: float = 0.0,
) -> Placement:
    """Best placement over all hyphenation patterns and rotation angles.

    Each candidate is one LP solve. Candidates that provably cannot beat the
    incumbent (bounding-box ratio bound) are skipped. Ties on scale prefer
    the smaller |angle|, then fewer hyphens.
    """
    if cell.area < DEGENERATE_AREA:
        raise InfeasibleCell(f"cell area {cell.area:.3e} below tolerance")

    breakpoints = _prioritized_breaks(word, max_breaks) if hyphenate else []
    patterns: list[tuple[int, ...]] = []
    for r in range(len(breakpoints) + 1):
        patterns.extend(itertools.combinations(breakpoints, r))

    angles_deg = (
        _angles(rotation_step, rotation_range[0], rotation_range[1])
        if rotation
        else [0.0]
    )

    cx0, cy0, cx1, cy1 = cell.bounds
    cell_w, cell_h = cx1 - cx0, cy1 - cy0

    best: Placement | None = None
    best_key: tuple[float, int] | None = None  # (|theta_deg|, hyphen count)

    for pattern in patterns:
        shape = word_hull(word, pattern, metrics)
        pivot = centroid(shape.hull)
        for deg in angles_deg:
            theta = math.radians(deg)
            rotated = rotate(shape.hull.vertices, theta, pivot)
            xs = [p[0] for p in rotated]
            ys = [p[1] for p in rotated]
            bound = min(cell_w / (max(xs) - min(xs)), cell_h / (max(ys) - min(ys)))
            # prune only candidates that cannot even tie the incumbent,
            # so tie-breaking still sees the preferred (small-angle) ones
            if best is not None and bound <= best.scale * (1.0 - _SCALE_TIE_REL):
                continue

            sol = solve_fit_lp(Polygon(rotated, validate=False), cell)
            if best is not None:
                if sol.scale <= best.scale * (1.0 - _SCALE_TIE_REL):
                    continue
                tied = sol.scale <= best.scale * (1.0 + _SCALE_TIE_REL)
                key = (abs(deg), len(pattern))
                if tied and key >= best_key:
                    continue

            # compose rotation-about-pivot with the LP's scale+offset
            c, s = math.cos(theta), math.sin(theta)
            rpx = c * pivot[0] - s * pivot[1]
            rpy = s * pivot[0] + c * pivot[1]
            dx = sol.offset[0] + sol.scale * (pivot[0] - rpx)
            dy = sol.offset[1] + sol.scale * (pivot[1] - rpy)
            best = Placement(
                word=word,
                scale=sol.scale,
                dx=dx,
                dy=dy,
                theta=theta,
                breaks=pattern,
                lines=shape.lines,
                line_offsets=shape.line_offsets,
                lam=sol.lam,
            )
            best_key = (abs(deg), len(pattern))

    assert best is not None
    return _finalize(best, min_em)


def fit_word_baseline(
    word: str, cell: Polygon, metrics: FontMetrics, *, min_em: float = 0.0
) -> Placement:
    """Non-optimized fit: inscribe the word's bounding rectangle in the largest
    circle centered at the cell centroid. No rotation, no hyphenation."""
    if cell.area < DEGENERATE_AREA:
        raise InfeasibleCell(f"cell area {cell.area:.3e} below tolerance")
    shape = word_hull(word, (), metrics)
    width, _ = metrics.line_width(word)
    height = metrics.line_height

    cx, cy = centroid(cell)
    radius = distance_to_boundary(cell, (cx, cy))
    scale = 2.0 * radius / math.hypot(width, height)

    rect_cx = width / 2.0
    rect_cy = (metrics.ascent + metrics.descent) / 2.0
    return _finalize(
        Placement(
            word=word,
            scale=scale,
            dx=cx - scale * rect_cx,
            dy=cy - scale * rect_cy,
            theta=0.0,
            breaks=(),
            lines=shape.lines,
            line_offsets=shape.line_offsets,
            lam=None,
        ),
        min_em,
    )

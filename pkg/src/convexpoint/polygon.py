"""Convex polygon representation, validation, quadrilateral extraction,
random generation, the exact half-plane oracle, and bounding boxes.

A ``ConvexPolygon`` is immutable once validated: vertices are stored
counter-clockwise, strictly convex (no collinear consecutive triple), with no
duplicate consecutive vertices and no self-intersection.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .geom import EPS, Point, _cross, _on_segment_coords, _require_finite


class PolygonError(ValueError):
    """Base class for polygon validation failures."""


class TooFewVerticesError(PolygonError):
    pass


class NotConvexError(PolygonError):
    pass


class DuplicateVertexError(PolygonError):
    pass


class NotSimpleError(PolygonError):
    pass


class Classification(Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class ConvexPolygon:
    """A validated, CCW-normalized, strictly convex vertex ring.

    Construct through :func:`validate_convex` (or the JSON loader); the raw
    constructor performs no checks and is reserved for internal use.
    """

    vertices: tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def centroid(self) -> Point:
        xs = sum(v.x for v in self.vertices)
        ys = sum(v.y for v in self.vertices)
        return Point(xs / self.n, ys / self.n)


@dataclass(frozen=True)
class Quad:
    """Four consecutive ring vertices (c, a, b, d) around the edge (a, b).

    ``c`` and ``d`` are the outer endpoints of the two edges adjacent to
    (a, b). For a triangle the ring wraps onto itself, c == d, and
    ``degenerate`` is set: the closing side collapses to the single point c.
    """

    c: Point
    a: Point
    b: Point
    d: Point
    degenerate: bool


class BoundingBox(NamedTuple):
    min: Point
    max: Point


def validate_convex(raw: Sequence[Point] | Iterable[Sequence[float]],
                    eps: float = EPS) -> ConvexPolygon:
    """Validate a vertex list and return a normalized polygon.

    Clockwise input is reversed to counter-clockwise. Raises
    TooFewVerticesError, DuplicateVertexError, NotConvexError or
    NotSimpleError when the ring cannot be normalized.
    """
    verts = [Point(float(p[0]), float(p[1])) for p in raw]
    for v in verts:
        _require_finite(v.x, v.y)
    n = len(verts)
    if n < 3:
        raise TooFewVerticesError(f"need at least 3 vertices, got {n}")

    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        if math.hypot(b.x - a.x, b.y - a.y) <= eps:
            raise DuplicateVertexError(
                f"vertices {i} and {(i + 1) % n} coincide at {a}")

    # Signed area decides the winding; flip CW rings to CCW.
    area2 = 0.0
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        area2 += a.x * b.y - b.x * a.y
    if area2 < 0.0:
        verts.reverse()

    for i in range(n):
        a = verts[i - 1]
        b = verts[i]
        c = verts[(i + 1) % n]
        d = _cross(a.x, a.y, b.x, b.y, c.x, c.y)
        if d <= eps:
            kind = "collinear" if abs(d) <= eps else "clockwise"
            raise NotConvexError(
                f"consecutive triple around vertex {i} is {kind}; "
                "strict convexity requires a counter-clockwise turn")

    # All turns are strictly left; the ring is simple iff it winds exactly
    # once (a star polygon turns left everywhere but winds more than once).
    turning = 0.0
    for i in range(n):
        a = verts[i - 1]
        b = verts[i]
        c = verts[(i + 1) % n]
        u = (b.x - a.x, b.y - a.y)
        w = (c.x - b.x, c.y - b.y)
        turning += math.atan2(u[0] * w[1] - u[1] * w[0],
                              u[0] * w[0] + u[1] * w[1])
    if abs(turning - 2.0 * math.pi) > 1e-6:
        raise NotSimpleError(
            f"ring winds {turning / (2.0 * math.pi):.3f} times; "
            "a simple convex polygon winds exactly once")

    return ConvexPolygon(tuple(verts))


def adjacent_quad(poly: ConvexPolygon, i: int) -> Quad:
    """Quad around edge ``i``: a = V_i, b = V_{i+1}, c = V_{i-1},
    d = V_{i+2}, indices mod N. ``degenerate`` is set iff N == 3."""
    n = poly.n
    if not 0 <= i < n:
        raise IndexError(f"edge index {i} out of range for {n}-gon")
    v = poly.vertices
    return Quad(
        c=v[i - 1],
        a=v[i],
        b=v[(i + 1) % n],
        d=v[(i + 2) % n],
        degenerate=(n == 3),
    )


_MAX_GENERATOR_ATTEMPTS = 64


def random_convex(n: int, seed: int, radius: float = 1.0) -> ConvexPolygon:
    """Deterministic random strictly convex n-gon.

    Vertices sit on a circle of the given radius at sorted random angles with
    mild radial jitter. Angle gaps are drawn in [0.7, 1.3] of the mean gap so
    consecutive triples keep a healthy margin above the collinearity
    tolerance even for thousands of vertices; the jitter amplitude is capped
    both at 5% and at what the local gaps can absorb without creating a
    reflex vertex. The result is re-validated and resampled on failure.
    """
    if n < 3:
        raise PolygonError(f"need n >= 3, got {n}")
    if not (radius > 0.0 and math.isfinite(radius)):
        raise PolygonError(f"radius must be positive and finite, got {radius}")

    rng = np.random.default_rng(seed)
    for _ in range(_MAX_GENERATOR_ATTEMPTS):
        gaps = 0.7 + 0.6 * rng.random(n)
        gaps *= (2.0 * math.pi) / float(gaps.sum())
        phase = 2.0 * math.pi * rng.random()
        angles = phase + np.cumsum(gaps)

        min_gap = float(gaps.min())
        jitter_amp = min(0.05, min_gap * min_gap / 8.0)
        radii = radius * (1.0 + jitter_amp * (2.0 * rng.random(n) - 1.0))

        xs = radii * np.cos(angles)
        ys = radii * np.sin(angles)
        try:
            return validate_convex(
                [Point(float(x), float(y)) for x, y in zip(xs, ys)])
        except PolygonError:
            continue
    raise RuntimeError(
        f"could not generate a valid convex polygon for n={n}, "
        f"radius={radius} after {_MAX_GENERATOR_ATTEMPTS} attempts")


def bounding_box(poly: ConvexPolygon) -> BoundingBox:
    xs = [v.x for v in poly.vertices]
    ys = [v.y for v in poly.vertices]
    return BoundingBox(Point(min(xs), min(ys)), Point(max(xs), max(ys)))


def oracle_classify(poly: ConvexPolygon, p: Point,
                    eps: float = EPS) -> Classification:
    """Ground-truth classification by the all-half-planes convexity test.

    INSIDE iff the point is strictly left of every directed edge;
    ON_BOUNDARY iff it is collinear with some edge and within that closed
    segment while never strictly right; OUTSIDE otherwise. With ``eps=0``
    and inputs whose signs are exactly representable this is exact.
    """
    verts = poly.vertices
    n = len(verts)
    px, py = p
    on_edge = False
    off_line = False
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        cr = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if cr < -eps:
            return Classification.OUTSIDE
        if cr <= eps:
            if _on_segment_coords(px, py, ax, ay, bx, by, max(eps, EPS)):
                on_edge = True
            else:
                off_line = True
    if on_edge:
        return Classification.ON_BOUNDARY
    if off_line:
        return Classification.OUTSIDE
    return Classification.INSIDE


def sigma(poly: ConvexPolygon, p: Point, eps: float = EPS) -> int:
    """Number of edges whose perpendicular passes the legality test for
    ``p``, counted by exhaustive scan over all N edges."""
    from .classify import legality_test  # deferred: classify builds on this module

    return sum(
        1 for i in range(poly.n) if legality_test(poly, i, p, eps).legal)


def polygon_to_dict(poly: ConvexPolygon) -> dict:
    return {"vertices": [[v.x, v.y] for v in poly.vertices]}


def polygon_from_dict(data: dict, eps: float = EPS) -> ConvexPolygon:
    if not isinstance(data, dict) or "vertices" not in data:
        raise PolygonError('polygon document must be {"vertices": [[x, y], ...]}')
    return validate_convex(data["vertices"], eps)


def load_polygon(path: str, eps: float = EPS) -> ConvexPolygon:
    """Read a polygon from a JSON document {"vertices": [[x, y], ...]}."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return polygon_from_dict(data, eps)


def dump_polygon(poly: ConvexPolygon, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(polygon_to_dict(poly), fh)
        fh.write("\n")

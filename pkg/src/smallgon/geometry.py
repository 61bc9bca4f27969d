"""Planar geometry for small convex polygons.

Binary64 throughout. Tolerances are explicit keyword arguments with the
defaults used everywhere else in the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ConvexityError, DegenerateInputError, ValidationError

TOL = 1e-12


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateInputError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def dist(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def as_points(points: Iterable) -> list[Point2]:
    return [p if isinstance(p, Point2) else Point2(float(p[0]), float(p[1])) for p in points]


def cross(o: Point2, a: Point2, b: Point2) -> float:
    """z-component of (a - o) x (b - o); positive for a left turn."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _turn_is_flat(o: Point2, a: Point2, b: Point2, tol: float) -> bool:
    scale = o.dist(a) * a.dist(b)
    return abs(cross(o, a, b)) <= tol * scale


def reflect_x(p: Point2) -> Point2:
    """Mirror across the y-axis."""
    return Point2(-p.x, p.y)


@dataclass(frozen=True)
class ConvexPolygon:
    """Vertices in boundary order plus index pairs claimed to be at distance 1.

    ``vertex_ids`` optionally records a construction label for each
    position (e.g. the chain index of each vertex of a built D_n).
    """

    vertices: tuple[Point2, ...]
    diameter_pairs: tuple[tuple[int, int], ...] = ()
    label: str = ""
    vertex_ids: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(as_points(self.vertices)))
        object.__setattr__(
            self, "diameter_pairs", tuple((int(i), int(j)) for i, j in self.diameter_pairs)
        )
        if self.vertex_ids is not None:
            ids = tuple(int(i) for i in self.vertex_ids)
            if len(ids) != len(self.vertices):
                raise ValueError("vertex_ids must label every vertex")
            object.__setattr__(self, "vertex_ids", ids)

    def __len__(self) -> int:
        return len(self.vertices)

    def position_of(self, vertex_id: int) -> int:
        if self.vertex_ids is None:
            return vertex_id
        return self.vertex_ids.index(vertex_id)

    def validate(self, tol: float = TOL) -> None:
        """Raise unless strictly convex, small, and every diameter pair is unit length."""
        if not is_strictly_convex(self.vertices, tol=tol):
            raise ConvexityError(f"{self.label or 'polygon'} is not strictly convex")
        for i, j in self.diameter_pairs:
            d = self.vertices[i].dist(self.vertices[j])
            if abs(d - 1.0) > tol:
                raise ValidationError(f"diameter pair ({i}, {j}) has length {d!r}")
        d = diameter(self)
        if abs(d - 1.0) > tol:
            raise ValidationError(f"diameter {d!r} differs from 1")


@dataclass(frozen=True)
class Metrics:
    perimeter: float
    width: float
    diameter: float
    n: int
    upper_perimeter: float = field(init=False)
    upper_width: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "upper_perimeter", upper_perimeter(self.n))
        object.__setattr__(self, "upper_width", upper_width(self.n))

    def check(self, tol: float = TOL) -> None:
        if self.perimeter > self.upper_perimeter + tol:
            raise ValidationError(f"perimeter {self.perimeter!r} exceeds bound {self.upper_perimeter!r}")
        if self.width > self.upper_width + tol:
            raise ValidationError(f"width {self.width!r} exceeds bound {self.upper_width!r}")
        if not 0.0 < self.width < self.diameter:
            raise ValidationError("width must lie strictly between 0 and the diameter")


def upper_perimeter(n: int) -> float:
    return 2 * n * math.sin(math.pi / (2 * n))


def upper_width(n: int) -> float:
    return math.cos(math.pi / (2 * n))


def _vertices(poly) -> Sequence[Point2]:
    pts = poly.vertices if isinstance(poly, ConvexPolygon) else as_points(poly)
    if len(pts) < 3:
        raise DegenerateInputError(f"need at least 3 vertices, got {len(pts)}")
    return pts


def diameter(poly, method: str = "brute") -> float:
    """Largest vertex-to-vertex distance.

    ``method="brute"`` checks all pairs and is the reference path;
    ``method="calipers"`` walks antipodal pairs of a strictly convex CCW
    polygon in linear time.
    """
    pts = _vertices(poly)
    if method == "brute":
        m = len(pts)
        return max(pts[i].dist(pts[j]) for i in range(m) for j in range(i + 1, m))
    if method == "calipers":
        return _diameter_calipers(pts)
    raise ValueError(f"unknown diameter method {method!r}")


def _diameter_calipers(pts: Sequence[Point2]) -> float:
    if _signed_area2(pts) < 0:
        pts = list(reversed(pts))
    m = len(pts)
    j = 1
    best = 0.0
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        # advance j while the triangle on edge (a, b) keeps growing
        for _ in range(m):
            if cross(a, b, pts[(j + 1) % m]) > cross(a, b, pts[j]):
                j = (j + 1) % m
            else:
                break
        best = max(best, a.dist(pts[j]), b.dist(pts[j]))
    return best


def _signed_area2(pts: Sequence[Point2]) -> float:
    m = len(pts)
    return sum(pts[i].x * pts[(i + 1) % m].y - pts[(i + 1) % m].x * pts[i].y for i in range(m))


def perimeter(poly) -> float:
    pts = _vertices(poly)
    m = len(pts)
    return math.fsum(pts[i].dist(pts[(i + 1) % m]) for i in range(m))


def side_heights(poly) -> list[float]:
    """For each side (i, i+1), the farthest vertex distance to its supporting line."""
    pts = _vertices(poly)
    m = len(pts)
    heights = []
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        length = a.dist(b)
        heights.append(max(abs(cross(a, b, p)) for p in pts) / length)
    return heights


def width(poly) -> float:
    """Minimum over sides of the side's height."""
    pts = _vertices(poly)
    if not is_strictly_convex(pts):
        raise ConvexityError("width is only defined here for strictly convex input")
    return min(side_heights(pts))


def is_strictly_convex(vertices, tol: float = TOL) -> bool:
    """All turns share one sign and none is flat (relative to edge lengths).

    Also rejects self-intersecting "star" orders by requiring the turning
    angles to total one full revolution.
    """
    try:
        pts = as_points(vertices)
    except DegenerateInputError:
        return False
    m = len(pts)
    if m < 3:
        return False
    sign = 0
    total = 0.0
    for i in range(m):
        o, a, b = pts[i], pts[(i + 1) % m], pts[(i + 2) % m]
        if o.dist(a) == 0.0 or a.dist(b) == 0.0 or _turn_is_flat(o, a, b, tol):
            return False
        s = 1 if cross(o, a, b) > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
        ux, uy = a.x - o.x, a.y - o.y
        vx, vy = b.x - a.x, b.y - a.y
        total += math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    return abs(abs(total) - 2 * math.pi) < 1e-6


def convex_hull_indices(points, tol: float = TOL) -> list[int]:
    """Monotone-chain hull; CCW indices into ``points``, near-collinear points dropped."""
    pts = as_points(points)
    if len(pts) < 3:
        raise DegenerateInputError(f"need at least 3 points, got {len(pts)}")
    order = sorted(range(len(pts)), key=lambda i: (pts[i].x, pts[i].y))

    def keep_left(chain: list[int], k: int) -> None:
        while len(chain) >= 2:
            o, a = pts[chain[-2]], pts[chain[-1]]
            c = cross(o, a, pts[k])
            if c > 0 and not _turn_is_flat(o, a, pts[k], tol):
                break
            chain.pop()
        chain.append(k)

    lower: list[int] = []
    for k in order:
        keep_left(lower, k)
    upper: list[int] = []
    for k in reversed(order):
        keep_left(upper, k)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInputError("points are collinear")
    return hull


def convex_hull(points, tol: float = TOL) -> list[Point2]:
    pts = as_points(points)
    return [pts[i] for i in convex_hull_indices(pts, tol=tol)]

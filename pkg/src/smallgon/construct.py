"""Polygon builders: the diameter-chain n-gon D_n, regular R_n, Reinhardt R_{m,n},
and closed-form perimeter/width references for the families compared against.

Chain coordinates: v_1 = (0, 0), v_0 = (0, 1). The diameter from the odd
endpoint to the even endpoint has heading theta, measured clockwise from
+y, so its direction is (sin theta, cos theta). Each block k rotates it by
alpha_{2k} then alpha_{2k+1}:

    Pattern I  (b_k = +1): pivot v_{2k+1} then v_{2k+2}; new vertices v_{2k+2}, v_{2k+3}
    Pattern II (b_k = -1): pivot v_{2k}   then v_{2k+3}; new vertices v_{2k+3}, v_{2k+2}

After n/4 blocks the heading is pi/2 and the right half is mirrored with
v_j <-> v_{n+1-j}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import signopt
from .errors import ConstructionError, ParameterError, ValidationError
from .geometry import (
    TOL,
    ConvexPolygon,
    Metrics,
    Point2,
    convex_hull_indices,
    diameter,
    is_strictly_convex,
    perimeter,
    reflect_x,
    upper_perimeter,
    upper_width,
    width,
)
from .signopt import SignVector, check_n


@dataclass(frozen=True)
class PolygonSpec:
    n: int
    b: SignVector
    c: tuple[int, ...]
    delta: float

    def __post_init__(self):
        check_n(self.n, min_n=16)
        if self.b.n != self.n:
            raise ParameterError(f"sign vector is for n={self.b.n}, not {self.n}")
        c = tuple(int(x) for x in self.c)
        if len(c) != self.n // 4 or any(x not in (1, -1) for x in c):
            raise ParameterError("c must be a +-1 vector of length n/4")
        object.__setattr__(self, "c", c)
        if not (math.isfinite(self.delta) and 0.0 <= self.delta < math.pi / self.n):
            raise ParameterError(f"delta must lie in [0, pi/{self.n}), got {self.delta!r}")


@dataclass(frozen=True)
class ChainState:
    """Current diameter of the chain: even-index endpoint, odd-index endpoint, heading."""

    even: Point2
    odd: Point2
    heading: float
    step_index: int = 0


def angle_schedule(spec: PolygonSpec) -> list[float]:
    """(alpha_0, ..., alpha_{n/2-1}) with alpha_{2k} = pi/n + c_k delta, alpha_{2k+1} = pi/n - c_k delta."""
    h = math.pi / spec.n
    out = []
    for ck in spec.c:
        out.append(h + ck * spec.delta)
        out.append(h - ck * spec.delta)
    return out


def _unit(theta: float) -> Point2:
    return Point2(math.sin(theta), math.cos(theta))


def apply_pattern_step(state: ChainState, b_k: int, alpha_first: float, alpha_second: float):
    """One block of the chain. Returns (new_state, first_new_vertex, second_new_vertex).

    The first new vertex is v_{2k+2} for b_k = +1 and v_{2k+3} for b_k = -1.
    """
    if b_k not in (1, -1):
        raise ParameterError(f"b_k must be +1 or -1, got {b_k!r}")
    t1 = state.heading + alpha_first
    t2 = t1 + alpha_second
    if b_k == 1:
        even = state.odd + _unit(t1)
        odd = even - _unit(t2)
        first, second = even, odd
        pivots = ((state.odd, even), (even, odd))
    else:
        odd = state.even - _unit(t1)
        even = odd + _unit(t2)
        first, second = odd, even
        pivots = ((state.even, odd), (odd, even))
    for p, q in pivots:
        d = p.dist(q)
        if abs(d - 1.0) > TOL:
            raise ConstructionError("chain", f"rotated segment has length {d!r}")
    return ChainState(even, odd, t2, state.step_index + 1), first, second


def pattern_pairs(k: int, b_k: int) -> list[tuple[int, int]]:
    """Vertex-id pairs that are diameters after block k."""
    if b_k == 1:
        return [(2 * k + 1, 2 * k + 2), (2 * k + 2, 2 * k + 3)]
    return [(2 * k, 2 * k + 3), (2 * k + 3, 2 * k + 2)]


def oriented(b: SignVector) -> SignVector:
    """Global sign making sum_k b_k sin((2k+1) pi/n) <= 0, so delta lands in [0, pi/n)."""
    return -b if signopt.signed_sum(b.n, b) > 0 else b


def chain_vertices(spec: PolygonSpec) -> tuple[dict[int, Point2], list[tuple[int, int]]]:
    """Vertices v_0 .. v_{n/2+1} and the chain's diameter pairs, by vertex id."""
    alphas = angle_schedule(spec)
    verts = {0: Point2(0.0, 1.0), 1: Point2(0.0, 0.0)}
    pairs = [(0, 1)]
    state = ChainState(verts[0], verts[1], 0.0)
    for k, bk in enumerate(spec.b.b):
        state, first, second = apply_pattern_step(state, bk, alphas[2 * k], alphas[2 * k + 1])
        i_first, i_second = (2 * k + 2, 2 * k + 3) if bk == 1 else (2 * k + 3, 2 * k + 2)
        verts[i_first] = first
        verts[i_second] = second
        pairs.extend(pattern_pairs(k, bk))
    return verts, pairs


def mirror_id(j: int, n: int) -> int:
    return j if j in (0, 1) else n + 1 - j


def boundary_order(n: int) -> list[int]:
    """Clockwise listing v_0, v_2, ..., v_{n-2}, v_1, v_3, ..., v_{n-1}."""
    return list(range(0, n, 2)) + list(range(1, n, 2))


@dataclass(frozen=True)
class DnBuild:
    polygon: ConvexPolygon
    spec: PolygonSpec
    metrics: Metrics
    search: signopt.SignSearchResult
    closure_residual: float

    def __iter__(self):
        # unpacks as (polygon, spec, metrics)
        return iter((self.polygon, self.spec, self.metrics))


def make_spec(n: int, engine: str = "block", debug_delta_zero: bool = False, budget_mb=None):
    check_n(n, min_n=16)
    result = signopt.search(n, engine=engine, budget_mb=budget_mb)
    b = oriented(result.best)
    delta = 0.0 if debug_delta_zero else signopt.solve_delta(n, result.sigma).delta
    return PolygonSpec(n, b, b.b, delta), result


def build_dn(n: int, engine: str = "block", debug_delta_zero: bool = False, budget_mb=None) -> DnBuild:
    """Construct and certify D_n.

    ``engine`` selects the sign vector: ``block`` (default) follows the
    block recursion from n = 4 or 8; ``auto``, ``exhaustive`` and ``mitm``
    use the exact minimum. ``debug_delta_zero`` forces delta = 0, which the
    closure check must reject.
    """
    spec, result = make_spec(n, engine, debug_delta_zero, budget_mb)
    return build_from_spec(spec, result)


def build_from_spec(spec: PolygonSpec, result: signopt.SignSearchResult | None = None) -> DnBuild:
    n = spec.n
    half, pairs = chain_vertices(spec)

    closure = half[n // 2].x - 0.5
    if abs(closure) > TOL:
        raise ConstructionError(
            "closure", f"x[n/2] = {half[n // 2].x!r} but must equal 1/2 (residual {closure:.3e})"
        )
    if abs(half[n // 2 + 1].x + 0.5) > TOL or abs(half[n // 2 + 1].y - half[n // 2].y) > TOL:
        raise ConstructionError("closure", "v[n/2+1] is not the mirror image of v[n/2]")

    verts = dict(half)
    for j in range(n // 2 + 2, n):
        verts[j] = reflect_x(half[mirror_id(j, n)])
    seen = {tuple(sorted(p)) for p in pairs}
    seen |= {tuple(sorted((mirror_id(i, n), mirror_id(j, n)))) for i, j in pairs}

    ids = list(range(n))
    pts = [verts[j] for j in ids]
    hull = convex_hull_indices(pts)
    if len(hull) != n:
        raise ConstructionError("hull", f"convex hull kept {len(hull)} of {n} vertices")
    start = hull.index(0)
    hull = hull[start:] + hull[:start]
    expected = [0] + boundary_order(n)[::-1][:-1]
    if hull != expected:
        raise ConstructionError("boundary", "hull order differs from the interleaved even/odd listing")

    pos = {vid: p for p, vid in enumerate(hull)}
    poly = ConvexPolygon(
        vertices=tuple(verts[j] for j in hull),
        diameter_pairs=tuple(sorted(tuple(sorted((pos[i], pos[j]))) for i, j in seen)),
        label=f"D_{n}",
        vertex_ids=tuple(hull),
    )
    _certify_dn(poly, verts, n)
    metrics = Metrics(perimeter(poly), width(poly), diameter(poly), n)
    if result is None:
        m_value = signopt.objective(n, spec.b)
        result = signopt.SignSearchResult(spec.b.canonical(), m_value, signopt.sigma_from_m(n, m_value), "given", False)
    return DnBuild(poly, spec, metrics, result, closure)


def _certify_dn(poly: ConvexPolygon, verts: dict[int, Point2], n: int) -> None:
    if not is_strictly_convex(poly.vertices):
        raise ConstructionError("convexity", "built polygon is not strictly convex")
    for i, j in poly.diameter_pairs:
        d = poly.vertices[i].dist(poly.vertices[j])
        if abs(d - 1.0) > TOL:
            raise ConstructionError("smallness", f"designated diameter ({i}, {j}) has length {d!r}")
    d = diameter(poly)
    if abs(d - 1.0) > TOL:
        raise ConstructionError("smallness", f"diameter is {d!r}")
    for j in range(n):
        m = reflect_x(verts[j])
        other = verts[mirror_id(j, n)]
        if m.dist(other) > TOL:
            raise ConstructionError("symmetry", f"v[{j}] mirrored misses v[{mirror_id(j, n)}] by {m.dist(other):.3e}")


def chain_closure_at_zero(spec: PolygonSpec) -> float:
    """x[n/2] - 1/2 of the unperturbed chain, i.e. (1 - cos(pi/n)) * sum_k b_k sin((2k+1) pi/n)."""
    return 2 * math.sin(math.pi / (2 * spec.n)) ** 2 * signopt.signed_sum(spec.n, spec.b)


def build_regular(n: int) -> ConvexPolygon:
    """Regular n-gon (n even) with circumradius 1/2, so the long diagonals are diameters."""
    if not isinstance(n, int) or n < 4:
        raise ParameterError(f"n must be an integer >= 4, got {n!r}")
    if n % 2:
        raise ParameterError("only even n is supported for the regular family")
    pts = [
        Point2(0.5 * math.cos(2 * math.pi * i / n + math.pi / 2), 0.5 * math.sin(2 * math.pi * i / n + math.pi / 2))
        for i in range(n)
    ]
    pairs = [(i, i + n // 2) for i in range(n // 2)]
    poly = ConvexPolygon(tuple(pts), tuple(pairs), label=f"R_{n}")
    poly.validate()
    return poly


def build_reinhardt(m: int, n: int) -> ConvexPolygon:
    """Reuleaux m-gon subdivided into n/m equal arcs per side, then hulled."""
    if not isinstance(m, int) or m < 3 or m % 2 == 0:
        raise ParameterError(f"m must be an odd integer >= 3, got {m!r}")
    if not isinstance(n, int) or n < m or n % m:
        raise ParameterError(f"n must be a positive multiple of m={m}, got {n!r}")
    r = 1.0 / (2.0 * math.cos(math.pi / (2 * m)))
    corners = [Point2(r * math.cos(math.pi / 2 + 2 * math.pi * i / m), r * math.sin(math.pi / 2 + 2 * math.pi * i / m)) for i in range(m)]
    per_arc = n // m
    pts = []
    for i in range(m):
        a, b = corners[i], corners[(i + 1) % m]
        centre = corners[(i + (m + 1) // 2) % m]
        t0 = math.atan2(a.y - centre.y, a.x - centre.x)
        t1 = math.atan2(b.y - centre.y, b.x - centre.x)
        span = (t1 - t0 + math.pi) % (2 * math.pi) - math.pi
        pts.append(a)
        for j in range(1, per_arc):
            t = t0 + span * j / per_arc
            pts.append(Point2(centre.x + math.cos(t), centre.y + math.sin(t)))
    hull = convex_hull_indices(pts)
    if len(hull) != n:
        raise ConstructionError("hull", f"convex hull kept {len(hull)} of {n} vertices")
    pos = {h: p for p, h in enumerate(hull)}
    pairs = set()
    for i in range(n):
        for j in range(i + 1, n):
            if abs(pts[i].dist(pts[j]) - 1.0) <= TOL:
                pairs.add(tuple(sorted((pos[i], pos[j]))))
    poly = ConvexPolygon(tuple(pts[h] for h in hull), tuple(sorted(pairs)), label=f"R_{m},{n}")
    poly.validate()
    return poly


# -- closed forms -----------------------------------------------------------------

FAMILIES = ("Rn", "Bn", "Cn", "Dn", "upper")


def _b_angle(n: int) -> float:
    return math.pi / (2 * n) - 0.5 * math.asin(0.5 * math.sin(2 * math.pi / n))


def _c_angle(n: int) -> float:
    h = math.pi / n
    t = 0.5 * math.atan(math.tan(2 * h) * math.tan(h))
    s = 0.5 * math.asin(math.sin(2 * h) * math.sin(h) / math.sqrt(4 * math.sin(h) ** 2 + math.cos(4 * h)))
    return t - s


@dataclass(frozen=True)
class ClosedForm:
    """Closed-form perimeter and width, with their gaps to the upper bounds
    evaluated in product form so tiny gaps keep their relative accuracy."""

    n: int
    family: str
    perimeter: float
    width: float
    perimeter_gap: float
    width_gap: float

    def metrics(self) -> Metrics:
        return Metrics(self.perimeter, self.width, 1.0, self.n)


def closed_form(n: int, family: str, engine: str = "block", budget_mb=None) -> ClosedForm:
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")
    check_n(n, min_n=16 if family in ("Cn", "Dn") else 4)
    lu, wu = upper_perimeter(n), upper_width(n)
    q = math.pi / (2 * n)
    if family == "upper":
        return ClosedForm(n, family, lu, wu, 0.0, 0.0)
    if family == "Rn":
        # L = n sin(pi/n) = lu cos(q); W = cos(2q)
        lg = 2 * lu * math.sin(q / 2) ** 2
        wg = 2 * math.sin(1.5 * q) * math.sin(0.5 * q)
        return ClosedForm(n, family, n * math.sin(math.pi / n), math.cos(math.pi / n), lg, wg)
    if family == "Bn":
        theta = _b_angle(n)
        width_arg = math.pi / n - 0.5 * math.asin(0.5 * math.sin(2 * math.pi / n))
        return ClosedForm(
            n, family, lu * math.cos(theta), math.cos(width_arg),
            2 * lu * math.sin(theta / 2) ** 2, 2 * math.sin(q + theta / 2) * math.sin(theta / 2),
        )
    if family == "Cn":
        theta = _c_angle(n)
    else:
        result = signopt.search(n, engine=engine, budget_mb=budget_mb)
        theta = signopt.solve_delta(n, result.sigma).delta / 2
    return ClosedForm(
        n, family, lu * math.cos(theta), math.cos(q + theta),
        2 * lu * math.sin(theta / 2) ** 2, 2 * math.sin(q + theta / 2) * math.sin(theta / 2),
    )


def closed_form_reference(n: int, family: str, engine: str = "block") -> Metrics:
    return closed_form(n, family, engine=engine).metrics()


def dn_closed_form(n: int, delta: float) -> tuple[float, float]:
    """Perimeter 2n sin(pi/2n) cos(delta/2) and width cos(pi/2n + delta/2)."""
    return upper_perimeter(n) * math.cos(delta / 2), math.cos(math.pi / (2 * n) + delta / 2)


def check_metrics_agree(build: DnBuild, tol: float = 1e-10) -> None:
    lp, wp = dn_closed_form(build.spec.n, build.spec.delta)
    if abs(build.metrics.perimeter - lp) > tol:
        raise ValidationError(f"geometric perimeter {build.metrics.perimeter!r} vs closed form {lp!r}")
    if abs(build.metrics.width - wp) > tol:
        raise ValidationError(f"geometric width {build.metrics.width!r} vs closed form {wp!r}")


def schedule_sum_error(spec: PolygonSpec) -> float:
    return abs(math.fsum(angle_schedule(spec)) - math.pi / 2)


def side_schedule_lengths(spec: PolygonSpec) -> list[float]:
    """Expected side lengths 2 sin(alpha_i / 2), each appearing twice."""
    return sorted(2 * math.sin(a / 2) for a in angle_schedule(spec) for _ in range(2))


def polygon_sides(poly: ConvexPolygon) -> Sequence[float]:
    m = len(poly)
    return [poly.vertices[i].dist(poly.vertices[(i + 1) % m]) for i in range(m)]

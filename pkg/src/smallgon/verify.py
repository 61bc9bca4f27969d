"""Invariant suite for built D_n polygons and the sign-vector results behind them."""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import construct, signopt
from .errors import CapacityError, ConstructionError, SmallgonError
from .geometry import TOL, diameter, is_strictly_convex, reflect_x


@dataclass(frozen=True)
class CheckResult:
    name: str
    n: int
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  n={self.n:<5d} {self.name:<22s} {self.detail}"


GEOMETRIC_CHECKS = ("closure", "schedule_sum", "hull", "smallness", "convexity", "symmetry", "closed_form_agreement")


def _geometric(n: int, engine: str, debug_delta_zero: bool, budget_mb) -> list[CheckResult]:
    spec, result = construct.make_spec(n, engine, debug_delta_zero, budget_mb)
    out = []
    err = construct.schedule_sum_error(spec)
    out.append(CheckResult("schedule_sum", n, err <= 1e-13, f"|sum(alpha) - pi/2| = {err:.3e}"))
    try:
        build = construct.build_from_spec(spec, result)
    except ConstructionError as exc:
        out.append(CheckResult(exc.check, n, False, exc.detail))
        for name in GEOMETRIC_CHECKS:
            if name not in (exc.check, "schedule_sum"):
                out.append(CheckResult(name, n, False, "skipped: construction failed"))
        return out

    poly = build.polygon
    out.append(CheckResult("closure", n, abs(build.closure_residual) <= TOL, f"x[n/2] - 1/2 = {build.closure_residual:.3e}"))
    out.append(CheckResult("hull", n, len(poly) == n, f"{len(poly)} hull vertices"))
    d = diameter(poly)
    worst_pair = max((abs(poly.vertices[i].dist(poly.vertices[j]) - 1) for i, j in poly.diameter_pairs), default=0.0)
    out.append(CheckResult("smallness", n, abs(d - 1) <= TOL and worst_pair <= TOL,
                           f"|diam - 1| = {abs(d - 1):.3e}, worst chain pair {worst_pair:.3e}"))
    out.append(CheckResult("convexity", n, is_strictly_convex(poly.vertices), "strictly convex"))
    ids = poly.vertex_ids
    sym = max(reflect_x(poly.vertices[p]).dist(poly.vertices[poly.position_of(construct.mirror_id(ids[p], n))])
              for p in range(len(poly)))
    out.append(CheckResult("symmetry", n, sym <= TOL, f"max mirror mismatch {sym:.3e}"))
    lp, wp = construct.dn_closed_form(n, spec.delta)
    dl, dw = abs(build.metrics.perimeter - lp), abs(build.metrics.width - wp)
    out.append(CheckResult("closed_form_agreement", n, dl <= 1e-10 and dw <= 1e-10, f"dL = {dl:.3e}, dW = {dw:.3e}"))
    return out


def _signopt_checks(n: int, budget_mb) -> list[CheckResult]:
    out = []
    if n // 4 <= signopt.AUTO_EXHAUSTIVE_MAX_TERMS:
        ex = signopt.search_exhaustive(n)
        mm = signopt.search_mitm(n, budget_mb=budget_mb)
        ok = abs(ex.m_value - mm.m_value) <= 1e-15 and ex.best == mm.best
        out.append(CheckResult("engine_equivalence", n, ok, f"M = {ex.m_value:.17g} / {mm.m_value:.17g}"))

    base = signopt.search(n // 4, engine="auto", budget_mb=budget_mb)
    lifted = signopt.objective(n, signopt.derive_block_pattern(n // 4, base.best))
    bound = base.m_value * 4 * math.sin(math.pi / n) * math.sin(2 * math.pi / n)
    out.append(CheckResult("block_recursion", n, lifted <= bound + 1e-15, f"{lifted:.6e} <= {bound:.6e}"))

    try:
        exact = signopt.search(n, engine="auto", budget_mb=budget_mb)
    except CapacityError as exc:
        out.append(CheckResult("m_bound", n, False, str(exc)))
        return out
    s = int(math.log2(n))
    cb = signopt.m_upper_bound_closed(s)
    label = "" if exact.optimal else " (non-optimal engine)"
    out.append(CheckResult("m_bound", n, exact.m_value <= cb + 1e-15, f"M = {exact.m_value:.6e} <= {cb:.6e}{label}"))
    return out


def _delta_chain(n: int, engine: str, budget_mb) -> CheckResult:
    res = signopt.search(n, engine=engine, budget_mb=budget_mb)
    sol = signopt.solve_delta(n, res.sigma)
    bound = 2 * math.sin(math.pi / (2 * n)) ** 2 * res.sigma
    # the bound is tight to rounding for large n
    ok = sol.delta <= bound * (1 + 8 * 2.0**-52) and sol.residual <= 1e-14
    return CheckResult("delta_chain", n, ok, f"delta = {sol.delta:.6e} <= {bound:.6e}, residual {sol.residual:.1e}")


def run_checks(n_list, engine: str = "block", debug_delta_zero: bool = False, budget_mb=None) -> list[CheckResult]:
    results = []
    for n in n_list:
        n = signopt.check_n(int(n), min_n=16)
        try:
            results.extend(_geometric(n, engine, debug_delta_zero, budget_mb))
            results.extend(_signopt_checks(n, budget_mb))
            results.append(_delta_chain(n, engine, budget_mb))
        except SmallgonError as exc:
            results.append(CheckResult("error", n, False, str(exc)))
    return results

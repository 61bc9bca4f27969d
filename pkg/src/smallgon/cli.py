"""Command-line entry point.

Exit codes: 0 success, 2 parameter error, 3 capacity error,
4 invariant or validation failure.
"""
from __future__ import annotations

import argparse
import sys

from . import construct, report, signopt
from .errors import ParameterError, SmallgonError
from .geometry import diameter, perimeter, width
from .render import RenderOptions, render_svg
from .serialize import fmt17, polygon_to_json
from .verify import run_checks

EXIT_OK, EXIT_PARAM, EXIT_CAPACITY, EXIT_INVALID = 0, 2, 3, 4
ENGINE_CHOICES = ("auto", "exhaustive", "mitm", "block")


def parse_n_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ParameterError(f"--n expects comma-separated integers, got {text!r}") from None


def _dn_sizes(text: str) -> list[int]:
    ns = parse_n_list(text)
    if not ns:
        raise ParameterError("--n is empty")
    for n in ns:
        signopt.check_n(n, min_n=16)
    return ns


def _write(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> float:
    if args.mitm_memory_budget_mb is not None:
        return args.mitm_memory_budget_mb
    return signopt.default_mitm_budget_mb()


def cmd_build(args) -> int:
    if args.family == "dn":
        (n,) = _single(args.n)
        signopt.check_n(n, min_n=16)
        build = construct.build_dn(n, engine=args.engine, debug_delta_zero=args.debug_delta_zero,
                                   budget_mb=_budget(args))
        poly, spec, metrics = build
        text = polygon_to_json(poly, spec)
    elif args.family == "regular":
        (n,) = _single(args.n)
        poly, spec = construct.build_regular(n), None
        text = polygon_to_json(poly)
    else:
        if args.m is None:
            raise ParameterError("--family reinhardt needs --m")
        (n,) = _single(args.n)
        poly, spec = construct.build_reinhardt(args.m, n), None
        text = polygon_to_json(poly)
    _write(text, args.out)
    if args.out and args.out != "-":
        print(f"label      {poly.label}")
        print(f"perimeter  {fmt17(perimeter(poly))}")
        print(f"width      {fmt17(width(poly))}")
        print(f"diameter   {fmt17(diameter(poly))}")
        if spec is not None:
            print(f"delta      {fmt17(spec.delta)}")
    return EXIT_OK


def _single(text: str) -> list[int]:
    ns = parse_n_list(text)
    if len(ns) != 1:
        raise ParameterError("this command takes a single --n")
    return ns


def cmd_msearch(args) -> int:
    (n,) = _single(args.n)
    res = signopt.search(n, engine=args.engine, budget_mb=_budget(args))
    print(f"n        {n}")
    print(f"engine   {res.engine}")
    print(f"optimal  {str(res.optimal).lower()}")
    print(f"M        {fmt17(res.m_value)}")
    print(f"sigma    {fmt17(res.sigma)}")
    print(f"delta    {fmt17(signopt.solve_delta(n, res.sigma).delta)}")
    print("b        " + ",".join(f"{x:+d}" for x in res.best.b))
    return EXIT_OK


def cmd_table(args) -> int:
    ns = _dn_sizes(args.n)
    if args.format == "json":
        text = report.report_json(ns, engine=args.engine, budget_mb=_budget(args))
    elif args.format == "csv":
        text = report.rows_to_csv(report.make_table(ns, engine=args.engine, budget_mb=_budget(args)))
    else:
        raise ParameterError("table writes csv or json")
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    ns = _dn_sizes(args.n)
    results = run_checks(ns, engine=args.engine, debug_delta_zero=args.debug_delta_zero, budget_mb=_budget(args))
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_INVALID if failed else EXIT_OK


def cmd_render(args) -> int:
    (n,) = _single(args.n)
    if args.family == "dn":
        signopt.check_n(n, min_n=16)
        poly = construct.build_dn(n, engine=args.engine, budget_mb=_budget(args)).polygon
    elif args.family == "regular":
        poly = construct.build_regular(n)
    else:
        if args.m is None:
            raise ParameterError("--family reinhardt needs --m")
        poly = construct.build_reinhardt(args.m, n)
    opts = RenderOptions(canvas_px=args.canvas_px, show_labels=args.labels, caption=args.caption or "")
    _write(render_svg(poly, opts), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smallgon", description="Small convex polygons of near-maximal perimeter and width.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, engine_default):
        p.add_argument("--n", required=True, help="n or comma-separated list of n")
        p.add_argument("--engine", choices=ENGINE_CHOICES, default=engine_default)
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--mitm-memory-budget-mb", type=float, default=None,
                       help="overrides SMALLGON_MITM_BUDGET_MB (default 2048)")

    p = sub.add_parser("build", help="build a polygon and write it as JSON")
    common(p, "block")
    p.add_argument("--family", choices=("dn", "regular", "reinhardt"), default="dn")
    p.add_argument("--m", type=int, default=None, help="odd factor for --family reinhardt")
    p.add_argument("--debug-delta-zero", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("msearch", help="minimize the signed sine sum")
    common(p, "auto")
    p.set_defaults(func=cmd_msearch)

    p = sub.add_parser("table", help="perimeter and width table")
    common(p, "block")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the invariant suite")
    common(p, "block")
    p.add_argument("--debug-delta-zero", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="write an SVG figure")
    common(p, "block")
    p.add_argument("--family", choices=("dn", "regular", "reinhardt"), default="dn")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--canvas-px", type=int, default=600)
    p.add_argument("--labels", action="store_true")
    p.add_argument("--caption", default=None)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SmallgonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())

"""Convex small polygons (diameter 1) with near-maximal perimeter and width for n = 2^s."""
from .construct import build_dn, build_regular, build_reinhardt, closed_form, closed_form_reference
from .errors import (
    CapacityError,
    ConstructionError,
    ConvexityError,
    DegenerateInputError,
    NumericalFailure,
    ParameterError,
    SmallgonError,
    ValidationError,
)
from .geometry import ConvexPolygon, Metrics, Point2, convex_hull, diameter, perimeter, width
from .signopt import SignSearchResult, SignVector, objective, search, solve_delta

__all__ = [
    "build_dn", "build_regular", "build_reinhardt", "closed_form", "closed_form_reference",
    "CapacityError", "ConstructionError", "ConvexityError", "DegenerateInputError",
    "NumericalFailure", "ParameterError", "SmallgonError", "ValidationError",
    "ConvexPolygon", "Metrics", "Point2", "convex_hull", "diameter", "perimeter", "width",
    "SignSearchResult", "SignVector", "objective", "search", "solve_delta",
]

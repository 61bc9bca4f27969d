"""JSON and CSV emission with every float written at 17 significant digits."""
from __future__ import annotations

import json
import math

from .geometry import ConvexPolygon


def fmt17(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(float(x), ".17g")


def dumps(obj, indent: int | None = 2) -> str:
    """Like json.dumps, except floats are printed with 17 significant digits."""
    return _emit(obj, indent, 0)


def _emit(obj, indent, level) -> str:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt17(obj)
    if isinstance(obj, dict):
        items = [f"{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return _wrap("{", "}", items, indent, level)
    if isinstance(obj, (list, tuple)):
        flat = all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)
        items = [_emit(v, indent, level + 1) for v in obj]
        return _wrap("[", "]", items, None if flat else indent, level)
    if hasattr(obj, "item"):  # numpy scalars
        return _emit(obj.item(), indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _wrap(open_, close, items, indent, level):
    if not items:
        return open_ + close
    if indent is None:
        return open_ + ", ".join(items) + close
    pad = " " * (indent * (level + 1))
    return open_ + "\n" + ",\n".join(pad + it for it in items) + "\n" + " " * (indent * level) + close


def polygon_document(poly: ConvexPolygon, spec=None) -> dict:
    doc = {
        "label": poly.label,
        "n": len(poly),
        "vertices": [[p.x, p.y] for p in poly.vertices],
        "diameter_pairs": [[i, j] for i, j in poly.diameter_pairs],
    }
    if poly.vertex_ids is not None:
        doc["vertex_ids"] = list(poly.vertex_ids)
    if spec is not None:
        doc["spec"] = {"b": list(spec.b.b), "delta": spec.delta}
    return doc


def polygon_to_json(poly: ConvexPolygon, spec=None) -> str:
    return dumps(polygon_document(poly, spec)) + "\n"


def polygon_from_json(text: str) -> ConvexPolygon:
    doc = json.loads(text)
    if len(doc["vertices"]) != doc["n"]:
        raise ValueError("vertex count does not match n")
    return ConvexPolygon(
        vertices=tuple((float(x), float(y)) for x, y in doc["vertices"]),
        diameter_pairs=tuple((int(i), int(j)) for i, j in doc["diameter_pairs"]),
        label=doc.get("label", ""),
        vertex_ids=doc.get("vertex_ids"),
    )

import math
import xml.etree.ElementTree as ET

import pytest

from smallgon.construct import build_dn
from smallgon.errors import ParameterError
from smallgon.geometry import ConvexPolygon, Point2
from smallgon.render import RenderOptions, render_svg

NS = "{http://www.w3.org/2000/svg}"
S = math.sqrt(2) / 4
SQUARE = ConvexPolygon((Point2(S, S), Point2(-S, S), Point2(-S, -S), Point2(S, -S)), ((0, 2), (1, 3)), "square")


def groups(svg):
    root = ET.fromstring(svg)
    return root, {g.get("class"): g for g in root.iter(NS + "g")}


def test_square_counts():
    root, g = groups(render_svg(SQUARE))
    assert len(g["sides"].findall(NS + "line")) == 4
    assert len(g["diameters"].findall(NS + "line")) == 2
    assert g["sides"].get("stroke") == "blue" and g["diameters"].get("stroke") == "black"
    assert len(g["vertices"].findall(NS + "circle")) == 4


def test_dn32_counts(built):
    poly = built(32).polygon
    root, g = groups(render_svg(poly, RenderOptions(caption="D_32", show_labels=True)))
    assert len(g["sides"].findall(NS + "line")) == 32
    assert len(g["diameters"].findall(NS + "line")) == len(poly.diameter_pairs)
    assert len(g["labels"].findall(NS + "text")) == 32
    assert any(t.get("class") == "caption" and t.text == "D_32" for t in root.iter(NS + "text"))


def test_no_caption_no_text():
    root, _ = groups(render_svg(SQUARE))
    assert list(root.iter(NS + "text")) == []


def test_coordinates_inside_canvas(built):
    svg = render_svg(built(64).polygon, RenderOptions(canvas_px=300))
    root = ET.fromstring(svg)
    w, h = float(root.get("width")), float(root.get("height"))
    for el in root.iter():
        for attr in ("x1", "x2", "cx", "x"):
            if el.get(attr) is not None:
                assert 0 <= float(el.get(attr)) <= w
        for attr in ("y1", "y2", "cy", "y"):
            if el.get(attr) is not None:
                assert 0 <= float(el.get(attr)) <= h


def test_y_axis_points_up():
    root, g = groups(render_svg(SQUARE))
    ys = [float(c.get("cy")) for c in g["vertices"].findall(NS + "circle")]
    # first vertex (S, S) is above the third (-S, -S) in math, so higher on screen
    assert ys[0] < ys[2]


def test_deterministic(built):
    poly = built(16).polygon
    assert render_svg(poly) == render_svg(poly)


def test_stroke_widths():
    _, g = groups(render_svg(SQUARE, RenderOptions(canvas_px=600)))
    assert float(g["sides"].get("stroke-width")) == pytest.approx(2.0)
    assert float(g["diameters"].get("stroke-width")) == pytest.approx(1.2)


@pytest.mark.parametrize("kwargs", [{"canvas_px": 50}, {"margin_frac": 0.5}, {"side_color": 'x"y'}])
def test_invalid_options(kwargs):
    with pytest.raises(ParameterError):
        RenderOptions(**kwargs)


def test_caption_escaped():
    svg = render_svg(SQUARE, RenderOptions(caption="a < b & c"))
    ET.fromstring(svg)

import json

from smallgon import serialize
from smallgon.construct import build_regular


def test_polygon_round_trip(built):
    b = built(32)
    text = serialize.polygon_to_json(b.polygon, b.spec)
    doc = json.loads(text)
    assert doc["label"] == "D_32" and doc["n"] == 32
    assert doc["spec"]["b"] == list(b.spec.b.b)
    assert doc["spec"]["delta"] == b.spec.delta
    back = serialize.polygon_from_json(text)
    assert back.vertices == b.polygon.vertices
    assert back.diameter_pairs == b.polygon.diameter_pairs
    assert back.vertex_ids == b.polygon.vertex_ids


def test_seventeen_digits():
    assert serialize.fmt17(0.1) == "0.10000000000000001"
    assert serialize.dumps({"x": [0.1, 2]}, indent=None) == '{"x": [0.10000000000000001, 2]}'


def test_regular_without_spec():
    doc = json.loads(serialize.polygon_to_json(build_regular(8)))
    assert "spec" not in doc and len(doc["vertices"]) == 8

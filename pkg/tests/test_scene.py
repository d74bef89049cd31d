import json

import numpy as np
import pytest

from minkprod import InvalidInput
from minkprod.geometry import ConvexPolygon, Disk, Segment
from minkprod.numrange import ComplexMatrix
from minkprod.scene import format_csv, load_scene, parse_scene, read_csv, write_csv

SCENE = {
    "sets": [
        {"id": "s", "kind": "segment", "p": [1, -1], "q": [1, 1]},
        {"id": "P", "kind": "polygon", "vertices": [[1, 0], [2, 0], [2, 1]]},
        {"id": "D", "kind": "disk", "center": [1, 0], "radius": 0.5},
        {"id": "M", "kind": "matrix", "n": 2, "entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]},
    ],
    "ops": [{"op": "product", "a": "s", "b": "D", "out_svg": "sd.svg"}],
}


def test_parse_scene_kinds(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(SCENE))
    scene = load_scene(path)
    assert scene.get("s") == Segment(1 - 1j, 1 + 1j)
    assert isinstance(scene.get("P"), ConvexPolygon) and len(scene.get("P")) == 3
    assert scene.get("D") == Disk(1, 0.5)
    assert isinstance(scene.get("M"), ComplexMatrix)
    assert len(scene.ops) == 1


def test_scene_json_round_trip():
    scene = parse_scene(SCENE)
    again = parse_scene(scene.to_json())
    assert again.get("s") == scene.get("s")
    assert again.get("D") == scene.get("D")
    assert np.array_equal(again.get("M").entries, scene.get("M").entries)


@pytest.mark.parametrize(
    "data",
    [
        {"sets": [{"id": "x", "kind": "blob"}]},
        {"sets": [{"kind": "disk", "center": [0, 0], "radius": 1}]},
        {"sets": [{"id": "x", "kind": "disk", "center": [0, 0]}]},
        {"sets": [{"id": "x", "kind": "polygon", "vertices": []}]},
        {"sets": [{"id": "x", "kind": "disk", "center": [0, 0], "radius": 1}], "ops": [{"a": "y"}]},
        {
            "sets": [{"id": "x", "kind": "disk", "center": [0, 0], "radius": 1}],
            "ops": [{"a": "x", "out_svg": "o.svg"}, {"a": "x", "out_svg": "o.svg"}],
        },
        {"nothing": []},
    ],
)
def test_bad_scenes(data):
    with pytest.raises(InvalidInput):
        parse_scene(data)


def test_matrix_is_not_a_body():
    with pytest.raises(InvalidInput):
        parse_scene(SCENE).body("M")


def test_csv_round_trip_is_byte_identical(tmp_path):
    pts = np.array([0.1 + 0.2j, -1 / 3 + 1e-300j, 2.5e17 - 0.0j, 1 / 7])
    first = write_csv(pts, tmp_path / "a.csv")
    back = read_csv(first)
    assert np.array_equal(back, pts)
    second = write_csv(back, tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()
    assert format_csv([1 + 2j]) == "1,2\n"


def test_bad_csv(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2\n3\n")
    with pytest.raises(InvalidInput):
        read_csv(path)

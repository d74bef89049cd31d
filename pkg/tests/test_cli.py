import json

import pytest

from minkprod import cli
from minkprod.cli import main
from minkprod.scenarios import ScenarioResult
from minkprod.scene import read_csv


@pytest.fixture
def scene(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text(
        json.dumps(
            {
                "sets": [
                    {"id": "s1", "kind": "segment", "p": [1, -2], "q": [1, 2]},
                    {"id": "s2", "kind": "segment", "p": [1, -1], "q": [1, 1]},
                    {"id": "P", "kind": "polygon", "vertices": [[1, 0], [2, 0], [2, 1]]},
                    {"id": "one", "kind": "polygon", "vertices": [[1, 0]]},
                ]
            }
        )
    )
    return path


def test_product_of_segments_writes_outline(scene, tmp_path, capsys):
    svg, csv = tmp_path / "p.svg", tmp_path / "p.csv"
    assert main(["product", str(scene), "s1", "s2", "--out-svg", str(svg), "--out-csv", str(csv)]) == 0
    assert "nested" in capsys.readouterr().out
    assert svg.read_text().startswith("<?xml")
    pts = read_csv(csv)
    assert len(pts) > 100


def test_product_with_singleton_uses_raster(scene, tmp_path, capsys):
    pgm = tmp_path / "p.pgm"
    assert main(["--grid", "128", "--samples", "64", "product", str(scene), "P", "one", "--out-pgm", str(pgm)]) == 0
    assert "0 holes" in capsys.readouterr().out
    assert pgm.read_bytes().startswith(b"P5")


def test_unknown_id_is_input_error(scene):
    assert main(["product", str(scene), "s1", "nope"]) == 2


def test_missing_file_is_io_error(tmp_path):
    assert main(["product", str(tmp_path / "missing.json"), "a", "b"]) == 3


def test_unwritable_output_is_io_error(scene, tmp_path):
    target = tmp_path / "no" / "such" / "dir" / "p.csv"
    assert main(["product", str(scene), "s1", "s2", "--out-csv", str(target)]) == 3


def test_verify_known_and_unknown(capsys):
    assert main(["verify", "segment-nested-center"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["verify", "ex9.9"]) == 2


def test_verify_accepts_short_names(capsys):
    assert main(["verify", "thm2.4b-centers"]) == 0
    assert "segment-overlap-centers: PASS" in capsys.readouterr().out


def test_verify_passes_tolerance_on(monkeypatch, capsys):
    seen = []

    def fake_run(name, tol):
        seen.append((name, tol))
        return ScenarioResult(name, tol=tol)

    monkeypatch.setattr(cli, "run_scenario", fake_run)
    monkeypatch.setenv("MINKPROD_TOL", "1e-8")
    assert main(["verify", "segment-quad"]) == 1
    assert main(["--tol", "1e-7", "verify", "segment-quad"]) == 1
    assert seen == [("segment-quad", 1e-8), ("segment-quad", 1e-7)]


def test_numrange_csv(tmp_path):
    matrix = tmp_path / "m.json"
    matrix.write_text(json.dumps({"n": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}))
    out = tmp_path / "w.csv"
    assert main(["numrange", str(matrix), "--angles", "64", "--out-csv", str(out)]) == 0
    pts = sorted(read_csv(out), key=lambda z: z.imag)
    assert len(pts) == 2
    assert abs(pts[0] - 1) < 1e-9 and abs(pts[1] - 1j) < 1e-9


def test_numrange_nilpotent_circle(tmp_path):
    matrix = tmp_path / "m.json"
    matrix.write_text(json.dumps({"n": 2, "entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}))
    out, svg = tmp_path / "w.csv", tmp_path / "w.svg"
    assert main(["numrange", str(matrix), "--out-csv", str(out), "--out-svg", str(svg)]) == 0
    pts = read_csv(out)
    assert len(pts) == 360
    assert abs(pts) == pytest.approx([0.5] * 360, abs=1e-8)


def test_numrange_bad_matrix(tmp_path):
    matrix = tmp_path / "m.json"
    matrix.write_text("{broken")
    assert main(["numrange", str(matrix)]) == 2


def test_numrange_product_self(tmp_path, capsys):
    matrix = tmp_path / "m.json"
    matrix.write_text(json.dumps({"n": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]}))
    svg = tmp_path / "prod.svg"
    code = main(["--grid", "64", "--samples", "64", "numrange", str(matrix), "--angles", "16", "--product", "self", "--out-svg", str(svg)])
    assert code == 0
    assert "product raster" in capsys.readouterr().out
    assert "<rect" in svg.read_text()

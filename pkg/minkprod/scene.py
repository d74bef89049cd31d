"""Scene files, matrix files and boundary CSV."""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .exceptions import InvalidInput
from .geometry import ConvexBody, ConvexPolygon, Disk, Segment, convex_hull
from .numrange import ComplexMatrix

logger = logging.getLogger(__name__)

SceneItem = Union[ConvexBody, ComplexMatrix]
OUTPUT_KEYS = ("out_svg", "out_csv", "out_pgm")


def _point(value) -> complex:
    try:
        re, im = value
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"expected [re, im], got {value!r}") from exc


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def body_from_json(entry: dict) -> SceneItem:
    kind = entry.get("kind")
    try:
        if kind == "segment":
            return Segment(_point(entry["p"]), _point(entry["q"]))
        if kind == "polygon":
            vertices = [_point(v) for v in entry["vertices"]]
            if not vertices:
                raise InvalidInput("polygon needs at least one vertex")
            return convex_hull(vertices)
        if kind == "disk":
            return Disk(_point(entry["center"]), float(entry["radius"]))
        if kind == "matrix":
            return ComplexMatrix.from_json(entry)
    except KeyError as exc:
        raise InvalidInput(f"{kind} entry is missing {exc}") from exc
    raise InvalidInput(f"unknown set kind {kind!r}")


def body_to_json(item: SceneItem) -> dict:
    if isinstance(item, Segment):
        return {"kind": "segment", "p": _pair(item.p), "q": _pair(item.q)}
    if isinstance(item, ConvexPolygon):
        return {"kind": "polygon", "vertices": [_pair(v) for v in item.vertices]}
    if isinstance(item, Disk):
        return {"kind": "disk", "center": _pair(item.center), "radius": float(item.radius)}
    if isinstance(item, ComplexMatrix):
        return {"kind": "matrix", **item.to_json()}
    raise InvalidInput(f"cannot serialise {item!r}")


@dataclass
class Scene:
    sets: dict[str, SceneItem] = field(default_factory=dict)
    ops: list[dict] = field(default_factory=list)

    def get(self, set_id: str) -> SceneItem:
        try:
            return self.sets[set_id]
        except KeyError:
            raise InvalidInput(f"unknown set id {set_id!r}") from None

    def body(self, set_id: str) -> ConvexBody:
        item = self.get(set_id)
        if isinstance(item, ComplexMatrix):
            raise InvalidInput(f"{set_id!r} is a matrix, not a convex body")
        return item

    def to_json(self) -> dict:
        return {
            "sets": [{"id": k, **body_to_json(v)} for k, v in self.sets.items()],
            "ops": list(self.ops),
        }


def parse_scene(data: dict) -> Scene:
    if not isinstance(data, dict) or not isinstance(data.get("sets"), list):
        raise InvalidInput('scene must be an object with a "sets" list')
    scene = Scene()
    for entry in data["sets"]:
        set_id = entry.get("id") if isinstance(entry, dict) else None
        if not set_id:
            raise InvalidInput(f"set entry without id: {entry!r}")
        if set_id in scene.sets:
            raise InvalidInput(f"duplicate set id {set_id!r}")
        scene.sets[set_id] = body_from_json(entry)

    outputs = set()
    for op in data.get("ops", []):
        for key in ("a", "b"):
            if key in op:
                scene.get(op[key])
        for key in OUTPUT_KEYS:
            if op.get(key):
                if op[key] in outputs:
                    raise InvalidInput(f"output {op[key]!r} is written by more than one op")
                outputs.add(op[key])
        scene.ops.append(dict(op))
    logger.debug("scene with %d sets and %d ops", len(scene.sets), len(scene.ops))
    return scene


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from exc


def load_scene(path) -> Scene:
    return parse_scene(_read_json(path))


def load_matrix(path) -> ComplexMatrix:
    return ComplexMatrix.from_json(_read_json(path))


def format_csv(points) -> str:
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    return "".join("%.17g,%.17g\n" % (z.real, z.imag) for z in pts)


def write_csv(points, path) -> Path:
    path = Path(path)
    path.write_text(format_csv(points))
    return path


def read_csv(path) -> np.ndarray:
    rows = []
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        try:
            x, y = line.split(",")
            rows.append(complex(float(x), float(y)))
        except ValueError as exc:
            raise InvalidInput(f"{path}:{n}: expected x,y") from exc
    return np.array(rows, dtype=complex)

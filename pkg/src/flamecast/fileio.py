"""JSON documents for instances and layouts (17 significant digits)."""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Any, Mapping

from .errors import ParseError, StructureError
from .model import Instance, Layout, Topology, VertexKind


def _number(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x}")
    text = f"{x:.17g}"
    if "e" not in text and "." not in text and "inf" not in text:
        text += ".0"
    return text


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _number(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def instance_to_dict(instance: Instance) -> dict:
    return {
        "alpha": instance.alpha,
        "capacities": list(instance.capacities),
        "sources": [[p.x, p.y] for p in instance.sources],
        "sinks": [[p.x, p.y] for p in instance.sinks],
    }


def instance_from_dict(data: Any) -> Instance:
    try:
        if not isinstance(data, Mapping):
            raise TypeError("instance document must be an object")
        points = lambda key: [(float(p[0]), float(p[1])) for p in data[key]]  # noqa: E731
        caps = data["capacities"]
        if not isinstance(caps, list) or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in caps):
            raise TypeError("capacities must be a list of integers")
        return Instance(points("sources"), points("sinks"), caps, float(data["alpha"]))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"invalid instance: {exc}") from exc


def instance_hash(instance: Instance) -> str:
    text = dumps(instance_to_dict(instance), indent=0)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def layout_to_dict(layout: Layout, instance: Instance, cost: float) -> dict:
    topo = layout.topology
    vertices = []
    for v in range(topo.n_vertices):
        p = layout.positions[v]
        vertices.append(
            {
                "id": v,
                "kind": topo.kind(v).value,
                "layer": topo.layers[v],
                "parent": topo.parents[v],
                "pos": None if p is None else [p.x, p.y],
            }
        )
    return {"instance_hash": instance_hash(instance), "vertices": vertices, "cost": cost}


def layout_from_dict(data: Any, instance: Instance) -> tuple[Layout, float, str]:
    """Parse a layout document; returns (layout, recorded cost, recorded hash).

    Malformed documents raise ParseError; well-formed ones describing a
    parent array that is not a forest raise StructureError.
    """
    try:
        if not isinstance(data, Mapping):
            raise TypeError("layout document must be an object")
        verts = sorted(data["vertices"], key=lambda v: int(v["id"]))
        if [int(v["id"]) for v in verts] != list(range(len(verts))):
            raise ValueError("vertex ids must be 0..N-1")
        n, m = instance.n_sources, instance.n_sinks
        parents, positions = [], []
        for v in verts:
            parent = v["parent"]
            parents.append(None if parent is None else int(parent))
            pos = v.get("pos")
            positions.append(None if pos is None else (float(pos[0]), float(pos[1])))
        topo = Topology(n, m, parents)
        for v in verts:
            vid = int(v["id"])
            if "kind" in v and v["kind"] != topo.kind(vid).value:
                raise ValueError(f"vertex {vid} is a {topo.kind(vid).value}, file says {v['kind']}")
        for vid in range(n + m):
            if positions[vid] is None:
                raise ValueError(f"{topo.kind(vid).value} {vid} has no position")
        layout = Layout(topo, tuple(positions))
        return layout, float(data["cost"]), str(data.get("instance_hash", ""))
    except StructureError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"invalid layout: {exc}") from exc


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def write_json(path, obj: Any) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def load_instance(path) -> Instance:
    return instance_from_dict(read_json(path))


def save_instance(path, instance: Instance) -> None:
    write_json(path, instance_to_dict(instance))

"""JSON codecs for scalars, points, subsets, isometries and space files.

Rationals are written as ``"a/b"`` strings (integers as ``"n"``) so values
survive a round trip exactly; floats are rounded to 12 significant digits.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import InputError
from .graph import (EdgePoint, GraphIsometry, MetricGraph, PLSubset, RayPoint, Vertex,
                    as_scalar)
from .models import MODEL_KINDS, Circle, Euclidean


def scalar_to_json(x):
    if isinstance(x, bool):
        raise InputError("boolean scalar")
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.12g}")
    if isinstance(x, (tuple, list)):
        return [scalar_to_json(c) for c in x]
    raise InputError(f"not a scalar: {x!r}")


def scalar_from_json(x):
    """Strings and ints become Fractions; JSON floats stay floats."""
    if isinstance(x, bool):
        raise InputError("boolean scalar")
    if isinstance(x, float):
        return x
    try:
        return as_scalar(x)
    except (InputError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {x!r}") from exc


# points ---------------------------------------------------------------


def point_to_json(p):
    if isinstance(p, Vertex):
        return {"vertex": p.id}
    if isinstance(p, EdgePoint):
        return {"edge": p.edge, "t": scalar_to_json(p.t)}
    if isinstance(p, RayPoint):
        return {"ray": p.ray, "t": scalar_to_json(p.t)}
    if isinstance(p, tuple) and not all(isinstance(c, (int, float, Fraction)) for c in p):
        return [point_to_json(c) for c in p]
    return scalar_to_json(p)


def point_from_json(space, obj):
    """Decode a point of ``space`` (graph, model, product or quotient)."""
    from .constructors import PerturbedFamily, ProductSpace, QuotientSpace

    if isinstance(space, (QuotientSpace, PerturbedFamily)):
        return point_from_json(space.base, obj)
    if isinstance(space, ProductSpace):
        if not isinstance(obj, list) or len(obj) != 2:
            raise InputError(f"product point must be a pair, got {obj!r}")
        return space.canon((point_from_json(space.X, obj[0]), point_from_json(space.Y, obj[1])))
    if isinstance(space, MetricGraph):
        if isinstance(obj, str):
            obj = {"vertex": obj}
        if not isinstance(obj, dict):
            raise InputError(f"graph point must be an object, got {obj!r}")
        if "vertex" in obj:
            p = Vertex(str(obj["vertex"]))
        elif "edge" in obj:
            p = EdgePoint(str(obj["edge"]), scalar_from_json(obj.get("t", "0")))
        elif "ray" in obj:
            p = RayPoint(str(obj["ray"]), scalar_from_json(obj.get("t", "0")))
        else:
            raise InputError(f"graph point needs 'vertex', 'edge' or 'ray': {obj!r}")
        return space.canon(p)
    if isinstance(obj, list):
        return space.canon(tuple(scalar_from_json(c) for c in obj))
    return space.canon(scalar_from_json(obj))


# subsets and isometries ----------------------------------------------------


def subset_to_json(S: PLSubset) -> dict:
    enc = lambda table: {k: [[scalar_to_json(a), scalar_to_json(b)] for a, b in ivs]
                         for k, ivs in table.items()}
    return {"edges": enc(S.edges), "rays": enc(S.rays)}


def subset_from_json(g: MetricGraph, obj) -> PLSubset:
    if not isinstance(obj, dict) or not set(obj) <= {"edges", "rays"}:
        raise InputError(f"subset must have only 'edges' and 'rays': {obj!r}")
    dec = lambda table: {k: [(scalar_from_json(a), scalar_from_json(b)) for a, b in ivs]
                         for k, ivs in (table or {}).items()}
    try:
        return PLSubset(g, dec(obj.get("edges")), dec(obj.get("rays")))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed subset: {exc}") from exc


def isometry_to_json(iso: GraphIsometry) -> dict:
    return {"vertices": dict(iso.vmap), "rays": dict(iso.rmap),
            "edges": {e: [img, rev] for e, (img, rev) in iso.emap.items()}}


def isometry_from_json(g: MetricGraph, obj) -> GraphIsometry:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError("isometry needs a 'vertices' map")
    edges = obj.get("edges")
    emap = {e: (v[0], bool(v[1])) for e, v in edges.items()} if edges else None
    return GraphIsometry(g, obj["vertices"], obj.get("rays"), emap)


# spaces -------------------------------------------------------------------


def graph_from_json(obj) -> MetricGraph:
    try:
        verts = obj["vertices"]
        edges = [(e["id"], e["u"], e["v"], scalar_from_json(e["len"] if "len" in e else e["length"]))
                 for e in obj.get("edges", [])]
        rays = [(r["id"], r["base"]) for r in obj.get("rays", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"graph field missing or malformed: {exc}") from exc
    return MetricGraph(verts, edges, rays)


def graph_to_json(g: MetricGraph) -> dict:
    return {
        "kind": "graph",
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "len": scalar_to_json(e.length)}
                  for e in g.edges.values()],
        "rays": [{"id": r.id, "base": r.base} for r in g.rays.values()],
    }


def space_from_json(obj):
    """Build a space from its descriptor (see the README for the format).

    The descriptor may be wrapped as ``{"space": {...}}``.
    """
    from .constructors import PerturbedFamily, ProductSpace, QuotientSpace

    if isinstance(obj, dict) and "kind" not in obj and isinstance(obj.get("space"), dict):
        obj = obj["space"]
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("space descriptor needs a 'kind' field")
    kind = obj["kind"]
    if kind == "graph":
        return graph_from_json(obj)
    if kind == "euclidean":
        return Euclidean(int(obj.get("dim", 2)))
    if kind == "circle":
        return Circle(float(scalar_from_json(obj.get("radius", 1))))
    if kind in MODEL_KINDS:
        return MODEL_KINDS[kind]()
    if kind == "product":
        comps = obj.get("components")
        if not isinstance(comps, list) or len(comps) != 2:
            raise InputError("product needs two 'components'")
        return ProductSpace(space_from_json(comps[0]), space_from_json(comps[1]), obj.get("norm", "linf"))
    if kind == "quotient":
        base = space_from_json(obj.get("base"))
        if not isinstance(base, MetricGraph):
            raise InputError("quotient base must be a graph")
        gens = [isometry_from_json(base, o) for o in obj.get("group", [])]
        return QuotientSpace(base, gens)
    if kind == "family":
        base = space_from_json(obj.get("base"))
        if not isinstance(base, MetricGraph):
            raise InputError("family base must be a graph")
        steps = {int(n): {e: scalar_from_json(v) for e, v in lengths.items()}
                 for n, lengths in obj.get("steps", {}).items()}
        return PerturbedFamily(base, steps)
    raise InputError(f"unknown space kind {kind!r}")


def load_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_space(path):
    return space_from_json(load_json(path))

"""Example spaces shipped with the package."""
from __future__ import annotations

import json
from importlib import resources

from .errors import InputError

NAMES = ("diamond", "square", "bent_line", "chain", "line_graph", "line", "euclidean2",
         "hyperbolic2", "circle", "halfplane", "product_linf", "product_l2",
         "chain_mirror", "diamond_family")


def bundled_path(name: str):
    res = resources.files("ballspace") / "spaces" / f"{name}.json"
    if not res.is_file():
        raise InputError(f"no bundled space {name!r}")
    return res


def bundled_json(name: str) -> dict:
    return json.loads(bundled_path(name).read_text())


def load_bundled(name: str):
    from .io import space_from_json

    return space_from_json(bundled_json(name))


def diamond_swap(g):
    from .io import isometry_from_json

    res = resources.files("ballspace") / "spaces" / "diamond_swap.iso.json"
    return isometry_from_json(g, json.loads(res.read_text()))

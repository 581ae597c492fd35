"""Seeded random samples of points, radii and ball quadruples.

Graph samples are exact: offsets lie on a 1/8 grid, ray offsets stay
below 6 and radii below 6, so every value is a small dyadic rational.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .graph import EdgePoint, MetricGraph, RayPoint, Vertex
from .models import Circle, Euclidean, HalfPlane, Hyperbolic2, Line

GRID = 8
RAY_DEPTH = 6
MAX_RADIUS = 6


def _grid(rng: random.Random, hi) -> Fraction:
    return Fraction(rng.randint(0, int(hi * GRID)), GRID)


def sample_point(space, rng: random.Random):
    from .constructors import ProductSpace, QuotientSpace

    if isinstance(space, QuotientSpace):
        return sample_point(space.base, rng)
    if isinstance(space, ProductSpace):
        return (sample_point(space.X, rng), sample_point(space.Y, rng))
    if isinstance(space, MetricGraph):
        segs = space.segments()
        k = rng.randrange(len(space.vertices) + len(segs))
        if k < len(space.vertices):
            return Vertex(space.vertices[k])
        kind, sid = segs[k - len(space.vertices)]
        if kind == "e":
            return space.canon(EdgePoint(sid, _grid(rng, space.edges[sid].length)))
        return space.canon(RayPoint(sid, _grid(rng, RAY_DEPTH)))
    if isinstance(space, Line):
        return Fraction(rng.randint(-10 * GRID, 10 * GRID), GRID)
    if isinstance(space, Euclidean):
        return tuple(rng.uniform(-5, 5) for _ in range(space.dim))
    if isinstance(space, Hyperbolic2):
        return space.polar(rng.uniform(0, 3), rng.uniform(0, 2 * math.pi))
    if isinstance(space, Circle):
        return rng.uniform(0, 2 * math.pi)
    if isinstance(space, HalfPlane):
        # a third of the points sit on the boundary line
        v = 0.0 if rng.random() < 1 / 3 else rng.uniform(0, 5)
        return (rng.uniform(-5, 5), v)
    raise TypeError(f"cannot sample {type(space).__name__}")


def sample_radius(space, rng: random.Random):
    if _exact(space):
        return _grid(rng, MAX_RADIUS)
    if isinstance(space, Circle):
        return rng.uniform(0, 1.2 * math.pi * space.radius)
    return rng.uniform(0, MAX_RADIUS)


def _exact(space) -> bool:
    from .constructors import ProductSpace, QuotientSpace

    if isinstance(space, QuotientSpace):
        return True
    if isinstance(space, ProductSpace):
        return _exact(space.X) and _exact(space.Y)
    return isinstance(space, (MetricGraph, Line))


def sample_quadruples(space, n: int, seed: int = 0) -> list[tuple]:
    """``n`` seeded samples ``(x, t, y, s)``."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        x, t = sample_point(space, rng), sample_radius(space, rng)
        y, s = sample_point(space, rng), sample_radius(space, rng)
        out.append((x, t, y, s))
    return out


def sample_points(space, n: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [sample_point(space, rng) for _ in range(n)]

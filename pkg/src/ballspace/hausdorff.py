"""Hausdorff distance between compact PL subsets and between closed balls."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import InputError
from .graph import GraphPoint, MetricGraph, PLSubset, as_scalar, ball_subset


@dataclass(frozen=True)
class Ball:
    """Closed ball with a center in some space and a radius >= 0.

    The space itself is passed alongside (``hausdorff_balls(space, b1, b2)``).
    """

    center: Any
    radius: Any

    def __post_init__(self):
        if self.radius < 0:
            raise InputError(f"negative radius {self.radius}")


def directed_hausdorff(g: MetricGraph, A: PLSubset, B: PLSubset) -> tuple[Fraction, GraphPoint]:
    """``sup_{a in A} dist(a, B)`` and a point of ``A`` attaining it.

    ``dist(., B)`` equals the distance to the interval endpoints of ``B``
    off ``B`` and is zero on ``B``; on each interval of ``A`` the sup is
    attained at an interval end or a breakpoint of that field.
    """
    if A.is_empty() or B.is_empty():
        raise InputError("Hausdorff distance of an empty set")
    if A.graph != g or B.graph != g:
        raise InputError("subsets live on different graphs")
    fld = g.field(B.endpoints())
    best_v, best_p = None, None
    for seg, ivs in A.items():
        f = fld.segment[seg]
        inside = B.intervals(seg)
        for lo, hi in ivs:
            for t in [lo, hi, *f.breakpoints_in(lo, hi)]:
                v = Fraction(0) if any(a <= t <= b for a, b in inside) else f(t)
                if best_v is None or v > best_v:
                    best_v, best_p = v, (seg, t)
    return best_v, g.point_at(*best_p)


def hausdorff_pl(g: MetricGraph, A: PLSubset, B: PLSubset) -> Fraction:
    return max(directed_hausdorff(g, A, B)[0], directed_hausdorff(g, B, A)[0])


def hausdorff_intervals(I, J):
    """``max(|c - a|, |d - b|)`` for ``I = [a, b]``, ``J = [c, d]``."""
    (a, b), (c, d) = I, J
    if a > b or c > d:
        raise InputError(f"degenerate interval bounds {I} or {J}")
    return max(abs(c - a), abs(d - b))


def hausdorff_balls(space, B1: Ball, B2: Ball):
    """Hausdorff distance between two closed balls of ``space``.

    Graphs go through the exact PL path on their ball subsets; every other
    space kind supplies its own ``ball_hausdorff`` closed form.
    """
    if isinstance(space, MetricGraph):
        t, s = as_scalar(B1.radius), as_scalar(B2.radius)
        return hausdorff_pl(space, ball_subset(space, B1.center, t), ball_subset(space, B2.center, s))
    method = getattr(space, "ball_hausdorff", None)
    if method is None:
        raise InputError(f"unsupported space kind {type(space).__name__}")
    return method(B1.center, B1.radius, B2.center, B2.radius)


def taxicab(space, B1: Ball, B2: Ball):
    """``d(x, y) + |t - s|`` for ``B1 = B(x, t)``, ``B2 = B(y, s)``."""
    return space.distance(B1.center, B2.center) + abs(B1.radius - B2.radius)

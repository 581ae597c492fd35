"""The hyperspace of closed balls with the Hausdorff metric.

Balls are never materialised as points of a hyperspace; everything goes
through :func:`hausdorff_balls` on pairs of :class:`Ball` values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InputError
from .graph import GraphIsometry, MetricGraph, ball_subset, geodesic, sphere_points
from .hausdorff import Ball, hausdorff_balls
from .models import TOL


def _exact(space) -> bool:
    from .sampling import _exact as exact

    return exact(space)


def _is_zero(space, v) -> bool:
    return v == 0 if _exact(space) else abs(v) <= TOL


@dataclass(frozen=True)
class SigmaMetric:
    """Hausdorff metric on the closed balls of ``space``."""

    space: object

    def __call__(self, b1: Ball, b2: Ball):
        return hausdorff_balls(self.space, b1, b2)

    def f(self, x, t) -> Ball:
        return Ball(self.space.canon(x), t)


@dataclass(frozen=True)
class DeviationRow:
    x: object
    t: object
    y: object
    s: object
    hausdorff: object
    taxicab: object

    @property
    def deviation(self):
        """``taxicab - d_H``; never negative up to tolerance."""
        return self.taxicab - self.hausdorff


@dataclass
class DeviationReport:
    rows: list[DeviationRow] = field(default_factory=list)
    exact: bool = True

    @property
    def max_deviation(self):
        return max(abs(r.deviation) for r in self.rows)

    @property
    def argmax(self) -> int:
        devs = [abs(r.deviation) for r in self.rows]
        return devs.index(max(devs))

    @property
    def witness(self) -> DeviationRow:
        return self.rows[self.argmax]

    @property
    def lipschitz_ok(self) -> bool:
        slack = 0 if self.exact else TOL
        return all(r.deviation >= -slack for r in self.rows)

    @property
    def min_margin(self):
        """Smallest ``taxicab - d_H`` seen; the 1-Lipschitz residual."""
        return min(r.deviation for r in self.rows)

    @property
    def taxicab_holds(self) -> bool:
        return self.max_deviation == 0 if self.exact else self.max_deviation <= TOL


def deviation_row(space, x, t, y, s) -> DeviationRow:
    x, y = space.canon(x), space.canon(y)
    dh = hausdorff_balls(space, Ball(x, t), Ball(y, s))
    return DeviationRow(x, t, y, s, dh, space.distance(x, y) + abs(t - s))


def taxicab_deviation(space, samples: Sequence[tuple]) -> DeviationReport:
    """Compare ``d_H(B_t(x), B_s(y))`` with ``d(x, y) + |t - s|`` per sample."""
    if not samples:
        raise InputError("empty sample list")
    return DeviationReport([deviation_row(space, *q) for q in samples], _exact(space))


def f_injectivity_check(space, samples: Sequence[tuple]) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)`` of distinct samples ``(x, t)`` with equal balls."""
    pts = [(space.canon(x), t) for x, t in samples]
    out = []
    if isinstance(space, MetricGraph):
        balls = [ball_subset(space, x, t) for x, t in pts]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i] != pts[j] and balls[i] == balls[j]:
                    out.append((i, j))
        return out
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            (x, t), (y, s) = pts[i], pts[j]
            same = _is_zero(space, space.distance(x, y)) and _is_zero(space, t - s)
            if not same and _is_zero(space, hausdorff_balls(space, Ball(x, t), Ball(y, s))):
                out.append((i, j))
    return out


def midpoint_census(space, p, q) -> list:
    """All points ``m`` with ``d(p, m) = d(q, m) = d(p, q) / 2``.

    Exact on graphs (intersection of two spheres); closed forms elsewhere.
    """
    p, q = space.canon(p), space.canon(q)
    d = space.distance(p, q)
    if _is_zero(space, d):
        raise InputError("p and q coincide")
    if isinstance(space, MetricGraph):
        half = d / 2
        near_q = set(sphere_points(space, q, half))
        return [m for m in sphere_points(space, p, half) if m in near_q]
    return space.midpoints(p, q)


def is_sigma_midpoint(space, b1: Ball, b2: Ball, m: Ball) -> bool:
    total = hausdorff_balls(space, b1, b2)
    a, b = hausdorff_balls(space, b1, m), hausdorff_balls(space, m, b2)
    return _is_zero(space, 2 * a - total) and _is_zero(space, 2 * b - total)


def sigma_midpoints(space, b1: Ball, b2: Ball) -> list[tuple[Ball, bool]]:
    """Balls ``B_{(r+s)/2}(z)`` over census midpoints ``z``, each with a midpoint check."""
    t = b1.radius + b2.radius
    t = Fraction(t) / 2 if _exact(space) else t / 2
    out = []
    for z in midpoint_census(space, b1.center, b2.center):
        m = Ball(z, t)
        out.append((m, is_sigma_midpoint(space, b1, b2, m)))
    return out


@dataclass
class LiftReport:
    samples: int
    max_residual: object
    exact: bool

    @property
    def preserved(self) -> bool:
        return self.max_residual == 0 if self.exact else self.max_residual <= TOL


def lift_isometry(space, iso: GraphIsometry | Callable, samples: Sequence[tuple]) -> LiftReport:
    """Check ``d_H(F B1, F B2) = d_H(B1, B2)`` for ``F(B_r(x)) = B_r(iso(x))``.

    Graph isometries are validated at construction; a model-space motion
    is any callable and is trusted to be one.
    """
    if isinstance(space, MetricGraph) and isinstance(iso, GraphIsometry) and iso.graph != space:
        raise InputError("isometry belongs to another graph")
    worst = Fraction(0) if _exact(space) else 0.0
    for x, t, y, s in samples:
        before = hausdorff_balls(space, Ball(x, t), Ball(y, s))
        after = hausdorff_balls(space, Ball(iso(x), t), Ball(iso(y), s))
        worst = max(worst, abs(after - before))
    return LiftReport(len(samples), worst, _exact(space))


def sigma_path(g: MetricGraph, x, t, y, s):
    """``u -> B_{(1-u)t + us}(gamma(u l))`` along a shortest path ``gamma``."""
    path = geodesic(g, x, y)
    ell = path.length
    return lambda u: Ball(path.point(Fraction(u) * ell), (1 - Fraction(u)) * t + Fraction(u) * s)


def sigma_geodesic_defect(g: MetricGraph, x, t, y, s, us: Sequence) -> Fraction:
    """Max over pairs of ``|d_H(C(u), C(v)) - |u - v| d_H(C(0), C(1))|``."""
    C = sigma_path(g, x, t, y, s)
    full = hausdorff_balls(g, C(0), C(1))
    worst = Fraction(0)
    for i, u in enumerate(us):
        for v in us[i + 1:]:
            got = hausdorff_balls(g, C(u), C(v))
            worst = max(worst, abs(got - abs(Fraction(u) - Fraction(v)) * full))
    return worst

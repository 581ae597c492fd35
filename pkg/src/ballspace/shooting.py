"""Deciding the shooting property.

On a metric graph the property is decided exactly at a point ``x``; on the
model spaces it is tested by building the geodesic extension directly.

The decision at ``x`` works with the gap

    g(x, y, r) = d(y, x) + r - max_{p in B_r(x)} d(y, p),

which is >= 0, nondecreasing in ``r`` and zero exactly when some point of
the ball extends a geodesic from ``y`` through ``x`` by ``r``. Pushing
``r`` to infinity, the ball maximiser runs out along a ray ``rho``, so
``x`` holds iff every ``y`` has a ray with ``d(y, p) = d(y, x) + d(x, p)``
for a deep probe ``p`` on that ray. Each of those equality sets is a finite
union of closed intervals per segment, so coverage is decided exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .graph import (EdgePoint, GraphPoint, MetricGraph, RayPoint, Vertex, as_scalar,
                    eccentricity, farthest_in, ball_subset, point_key)
from .models import model_gap, shooting_witness
from .pl import uncovered_gaps

MAX_DOUBLINGS = 64


@dataclass(frozen=True)
class ShootingVerdict:
    point: object
    holds: bool
    witness_y: object = None
    witness_r: Fraction | None = None
    gap: Fraction | None = None
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def to_json(self) -> dict:
        from .io import point_to_json, scalar_to_json

        out = {"point": point_to_json(self.point), "verdict": self.verdict}
        if not self.holds:
            out["witness"] = {"y": point_to_json(self.witness_y),
                              "r": scalar_to_json(self.witness_r),
                              "gap": scalar_to_json(self.gap)}
            out["reason"] = self.reason
        return out


def _check_gap_args(space, x, y, r):
    if not r > 0:
        raise InputError(f"radius must be positive, got {r}")
    if space.distance(x, y) == 0:
        raise InputError("y must differ from x")


def shooting_gap(space, x, y, r):
    """``d(y, x) + r - max_{p in B_r(x)} d(y, p)``; exact on graphs."""
    if isinstance(space, MetricGraph):
        x, y, r = space.canon(x), space.canon(y), as_scalar(r)
        _check_gap_args(space, x, y, r)
        _, far = farthest_in(space, ball_subset(space, x, r), y)
        return space.distance(y, x) + r - far
    return model_gap(space, x, y, r)


def graph_shooting_witness(g: MetricGraph, x, y, r) -> GraphPoint | None:
    """A point ``p`` with ``d(x,p) = r`` and ``d(y,p) = d(y,x) + r``, or None."""
    x, y, r = g.canon(x), g.canon(y), as_scalar(r)
    _check_gap_args(g, x, y, r)
    p, far = farthest_in(g, ball_subset(g, x, r), y)
    return p if far == g.distance(y, x) + r else None


def witness(space, x, y, r):
    """Shooting witness on any supported space, or None."""
    if isinstance(space, MetricGraph):
        return graph_shooting_witness(space, x, y, r)
    if hasattr(space, "shooting_witness"):
        return space.shooting_witness(x, y, r)
    return shooting_witness(space, x, y, r)


def probe_depth(g: MetricGraph, x: GraphPoint) -> Fraction:
    """Deep-probe offset ``T``: beyond every breakpoint seen from ``x``."""
    x = g.canon(x)
    reach = max((g.distance(x, Vertex(r.base)) for r in g.rays.values()), default=Fraction(0))
    return 1 + g.total_length + reach


def _deficiency_zeros(g: MetricGraph, x: GraphPoint, T: Fraction):
    """Per segment, the closed set where some ray's deficiency vanishes."""
    fx = g.field(x)
    zeros: dict = {seg: [] for seg in g.segments()}
    for rid in g.rays:
        p = RayPoint(rid, T)
        fp = g.field(p)
        dxp = fx(p)
        for seg in g.segments():
            a, b = fx.segment[seg], fp.segment[seg]
            if seg[0] == "r":
                a, b = a.truncate(T), b.truncate(T)
            delta = (a - b).shift(dxp)
            zeros[seg].extend(delta.zero_set())
    return zeros


def decide_point(g: MetricGraph, x: GraphPoint) -> ShootingVerdict:
    """Exact shooting verdict at ``x``, quantified over all ``y`` and ``r``."""
    x = g.canon(x)
    if not g.rays:
        fx = g.field(x)
        seg, (t, _) = max(((s, f.max_on(f.lo, f.last)) for s, f in fx.segment.items()),
                          key=lambda item: item[1][1])
        y = g.point_at(seg, t)
        r = eccentricity(g, x) + 1
        return ShootingVerdict(x, False, y, r, shooting_gap(g, x, y, r), "empty sphere")

    T = probe_depth(g, x)
    zeros = _deficiency_zeros(g, x, T)
    for seg in g.segments():
        end = g.seg_length(seg) or T
        holes = uncovered_gaps(zeros[seg], Fraction(0), end)
        if not holes:
            continue
        lo, hi = holes[0]
        y = g.point_at(seg, (lo + hi) / 2)
        r = T
        for _ in range(MAX_DOUBLINGS):
            gap = shooting_gap(g, x, y, r)
            if gap > 0:
                return ShootingVerdict(x, False, y, r, gap, "uncovered segment")
            r *= 2
        raise RuntimeError(f"no positive gap found for uncovered y={y!r} at x={x!r}")
    return ShootingVerdict(x, True)


def default_probe(g: MetricGraph) -> list[GraphPoint]:
    """All vertices plus the midpoint of every edge."""
    pts = [Vertex(v) for v in g.vertices]
    pts += [EdgePoint(e.id, e.length / 2) for e in g.edges.values()]
    return pts


@dataclass
class SpaceReport:
    probe: list
    verdicts: list[ShootingVerdict] = field(default_factory=list)

    @property
    def holds_on_probe(self) -> bool:
        return all(v.holds for v in self.verdicts)

    @property
    def holding(self) -> list:
        return [v.point for v in self.verdicts if v.holds]

    def to_json(self) -> dict:
        return {"holds_on_probe": self.holds_on_probe,
                "verdicts": [v.to_json() for v in self.verdicts]}


def decide_space(g: MetricGraph, probe: Sequence[GraphPoint] | None = None) -> SpaceReport:
    """Map :func:`decide_point` over the probe (default: vertices and edge midpoints).

    Only the probe is decided; edge interiors in general are not.
    """
    probe = default_probe(g) if probe is None else [g.canon(p) for p in probe]
    if not probe:
        raise InputError("empty probe")
    return SpaceReport(list(probe), [decide_point(g, p) for p in probe])


@dataclass(frozen=True)
class ClosednessReport:
    limit: object
    distances: tuple
    verdict: ShootingVerdict

    @property
    def counterexample(self) -> bool:
        """True would contradict closedness of the shooting set."""
        return not self.verdict.holds


def closedness_harness(g: MetricGraph, xs: Sequence[GraphPoint], limit: GraphPoint) -> ClosednessReport:
    """Check that a limit of holding points holds.

    Every member of ``xs`` must hold and the distances to ``limit`` must
    be nonincreasing; otherwise the input is rejected.
    """
    limit = g.canon(limit)
    xs = [g.canon(p) for p in xs]
    if not xs:
        raise InputError("empty sequence")
    for p in xs:
        if not decide_point(g, p).holds:
            raise InputError(f"sequence member {p!r} does not satisfy the shooting property")
    dists = tuple(g.distance(p, limit) for p in xs)
    if any(b > a for a, b in zip(dists, dists[1:])):
        raise InputError("sequence does not approach the limit")
    return ClosednessReport(limit, dists, decide_point(g, limit))


def holding_set(report: SpaceReport) -> list:
    return sorted(report.holding, key=point_key)

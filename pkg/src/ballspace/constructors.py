"""New spaces from old: products, quotients by finite graph symmetry groups,
and families of graphs with perturbed edge lengths."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .graph import (EdgePoint, GraphIsometry, MetricGraph, Vertex, as_scalar, ball_subset,
                    farthest_distance)
from .hausdorff import Ball, hausdorff_balls
from .models import TOL

NORMS = ("l2", "linf")
MAX_GROUP = 4096


def _component_farthest(space, x, t, y):
    if isinstance(space, MetricGraph):
        return farthest_distance(space, x, t, y)
    return space.farthest(x, t, y)


def _component_contains(space, center, r, p) -> bool:
    if isinstance(space, MetricGraph):
        return ball_subset(space, center, r).contains(p)
    return space.distance(center, p) <= r


# products -----------------------------------------------------------------


@dataclass(frozen=True)
class ProductSpace:
    X: object
    Y: object
    norm: str = "linf"
    kind = "product"

    def __post_init__(self):
        if self.norm not in NORMS:
            raise InputError(f"norm must be 'l2' or 'linf', got {self.norm!r}")

    def canon(self, p):
        try:
            a, b = p
        except (TypeError, ValueError) as exc:
            raise InputError(f"product point must be a pair, got {p!r}") from exc
        return (self.X.canon(a), self.Y.canon(b))

    def distance(self, p, q):
        (a, b), (c, d) = self.canon(p), self.canon(q)
        dx, dy = self.X.distance(a, c), self.Y.distance(b, d)
        if self.norm == "linf":
            return max(dx, dy)
        return math.hypot(dx, dy)

    def contains(self, center, r, p) -> bool:
        return self.distance(center, p) <= r

    def factor_contains(self, center, r, p) -> bool:
        """Membership in ``B_r(x) x B_r(y)``, checked per component."""
        (x, y), (a, b) = self.canon(center), self.canon(p)
        return _component_contains(self.X, x, r, a) and _component_contains(self.Y, y, r, b)

    def farthest(self, center, r, target):
        """Farthest distance from ``target`` over the product ball (sup norm only)."""
        if self.norm != "linf":
            raise InputError("farthest distance is only available for the sup norm")
        (x, y), (a, b) = self.canon(center), self.canon(target)
        return max(_component_farthest(self.X, x, r, a), _component_farthest(self.Y, y, r, b))

    def ball_hausdorff(self, x, t, y, s):
        return product_hausdorff_infty(self, Ball(x, t), Ball(y, s))

    def shooting_witness(self, x, a, r):
        w = product_shooting_witness(self, x, a, r)
        return w.point if w.ok else None


def product_hausdorff_infty(P: ProductSpace, b1: Ball, b2: Ball):
    """Max of the component ball Hausdorff distances (sup-norm products)."""
    if P.norm != "linf":
        raise InputError("the component-max formula needs the sup norm")
    (x, y), (a, b) = P.canon(b1.center), P.canon(b2.center)
    t, s = b1.radius, b2.radius
    return max(hausdorff_balls(P.X, Ball(x, t), Ball(a, s)),
               hausdorff_balls(P.Y, Ball(y, t), Ball(b, s)))


def inclusion_hausdorff(P: ProductSpace, b1: Ball, b2: Ball):
    """``inf{r : B1 in B_{s+r}(c2), B2 in B_{t+r}(c1)}`` from farthest distances.

    Evaluated over the product ball directly, without the component
    Hausdorff formula; serves as the independent cross-check.
    """
    t, s = b1.radius, b2.radius
    zero = Fraction(0) if isinstance(t, Fraction) else 0.0
    return max(zero, P.farthest(b1.center, t, b2.center) - s, P.farthest(b2.center, s, b1.center) - t)


@dataclass(frozen=True)
class ProductWitness:
    point: tuple | None
    sphere_residual: float | None = None
    extension_residual: float | None = None
    failed_component: str | None = None

    @property
    def ok(self) -> bool:
        return (self.point is not None and self.sphere_residual <= TOL
                and self.extension_residual <= TOL)


def _component_extension(space, x, a, d, r):
    from .shooting import witness

    if d == 0:
        return x if r == 0 else None
    if isinstance(space, MetricGraph) and not isinstance(r, Fraction):
        r = Fraction(r)
    return witness(space, x, a, r)


def product_shooting_witness(P: ProductSpace, xy, ab, r, split: str = "proportional") -> ProductWitness:
    """Extend a geodesic from ``ab`` through ``xy`` by ``r`` in an l2 product.

    ``proportional`` extends each factor by ``r d_i / l``; ``equal`` by
    ``r / sqrt 2`` in each factor. Residuals are
    ``|d(xy, p) - r|`` and ``|d(ab, p) - l - r|``.
    """
    if P.norm != "l2":
        raise InputError("product shooting witness is for the l2 norm")
    if not r > 0:
        raise InputError(f"radius must be positive, got {r}")
    (x, y), (a, b) = P.canon(xy), P.canon(ab)
    dX, dY = P.X.distance(a, x), P.Y.distance(b, y)
    ell = P.distance((x, y), (a, b))
    if ell == 0:
        raise InputError("points coincide")
    if split == "proportional":
        rX, rY = r * float(dX) / ell, r * float(dY) / ell
    elif split == "equal":
        rX = rY = r / math.sqrt(2)
    else:
        raise InputError(f"unknown split {split!r}")
    p = _component_extension(P.X, x, a, dX, rX)
    if p is None:
        return ProductWitness(None, failed_component="X")
    q = _component_extension(P.Y, y, b, dY, rY)
    if q is None:
        return ProductWitness(None, failed_component="Y")
    pq = (p, q)
    sphere = abs(float(P.distance((x, y), pq)) - r)
    ext = abs(float(P.distance((a, b), pq)) - ell - r)
    return ProductWitness(pq, sphere, ext)


# quotients ----------------------------------------------------------------


def close_group(graph: MetricGraph, generators: Iterable[GraphIsometry]) -> list[GraphIsometry]:
    """Finite group generated by ``generators``, identity first."""
    ident = GraphIsometry.identity(graph)
    gens = list(generators)
    for g in gens:
        if g.graph != graph:
            raise InputError("generator acts on another graph")
    seen = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = g.compose(h)
                if k not in seen:
                    seen[k] = None
                    nxt.append(k)
                    if len(seen) > MAX_GROUP:
                        raise InputError("generated group is too large")
        frontier = nxt
    return list(seen)


class QuotientSpace:
    """A metric graph modulo a finite group of its isometries."""

    kind = "quotient"

    def __init__(self, base: MetricGraph, generators: Iterable[GraphIsometry] = ()):
        self.base = base
        self.group = close_group(base, generators)

    def canon(self, p):
        return self.base.canon(p)

    def orbit(self, p) -> list:
        p = self.canon(p)
        return sorted({g(p) for g in self.group}, key=repr)

    def distance(self, p, q):
        return orbit_distance(self, p, q)

    def ball_hausdorff(self, x, t, y, s):
        return min(hausdorff_balls(self.base, Ball(x, t), Ball(g(y), s)) for g in self.group)


def orbit_distance(Q: QuotientSpace, x, y) -> Fraction:
    x, y = Q.canon(x), Q.canon(y)
    return min(Q.base.distance(x, g(y)) for g in Q.group)


@dataclass
class QuotientReport:
    rows: list = field(default_factory=list)

    @property
    def max_deviation(self):
        return max((abs(r[-1]) for r in self.rows), default=Fraction(0))


def quotient_sigma_check(Q: QuotientSpace, samples: Sequence[tuple]) -> QuotientReport:
    """Check ``min_g d_H(B_t(x), B_s(gy)) = d_G(x, y) + |t - s|`` per sample.

    Every sampled center must satisfy the shooting property in the base.
    """
    from .shooting import decide_point

    verdicts: dict = {}
    rep = QuotientReport()
    for x, t, y, s in samples:
        x, y, t, s = Q.canon(x), Q.canon(y), as_scalar(t), as_scalar(s)
        for c in (x, y):
            if c not in verdicts:
                verdicts[c] = decide_point(Q.base, c).holds
            if not verdicts[c]:
                raise InputError(f"center {c!r} does not satisfy the shooting property")
        lhs = Q.ball_hausdorff(x, t, y, s)
        rhs = orbit_distance(Q, x, y) + abs(t - s)
        rep.rows.append((x, t, y, s, lhs, rhs, lhs - rhs))
    return rep


@dataclass(frozen=True)
class ReturnerReport:
    point_returners: int
    ball_returners: int

    @property
    def transfers(self) -> bool:
        return self.ball_returners <= self.point_returners


def returner_check(Q: QuotientSpace, x, t, rho) -> ReturnerReport:
    """Count group elements moving a ``rho``-ball to meet itself.

    Point returners: ``d(x, gx) <= 2 rho``. Ball returners act on the space
    of balls: ``d_H(B_t(x), B_t(gx)) <= 2 rho``. Finitely many point
    returners bound the ball returners when the two counts agree.
    """
    x, t, rho = Q.canon(x), as_scalar(t), as_scalar(rho)
    pts = sum(1 for g in Q.group if Q.base.distance(x, g(x)) <= 2 * rho)
    balls = sum(1 for g in Q.group
                if hausdorff_balls(Q.base, Ball(x, t), Ball(g(x), t)) <= 2 * rho)
    return ReturnerReport(pts, balls)


# perturbed families ---------------------------------------------------------


class PerturbedFamily:
    """Graphs sharing the combinatorics of ``base`` with per-step edge lengths.

    Points are identified across steps proportionally along each edge.
    """

    kind = "family"

    def __init__(self, base: MetricGraph, steps: Mapping[int, Mapping[str, object]]):
        self.base = base
        self.steps: dict[int, MetricGraph] = {}
        for n, lengths in sorted(steps.items()):
            edges = []
            for e in base.edges.values():
                L = as_scalar(lengths.get(e.id, e.length))
                if L <= 0:
                    raise InputError(f"step {n}: nonpositive length {L} on edge {e.id!r}")
                edges.append((e.id, e.u, e.v, L))
            unknown = set(lengths) - set(base.edges)
            if unknown:
                raise InputError(f"step {n}: unknown edges {sorted(unknown)}")
            self.steps[n] = MetricGraph(base.vertices, edges, [(r.id, r.base) for r in base.rays.values()])

    def canon(self, p):
        return self.base.canon(p)

    def distance(self, p, q):
        return self.base.distance(p, q)

    def graph_at(self, n: int) -> MetricGraph:
        if n not in self.steps:
            raise InputError(f"no step {n}")
        return self.steps[n]

    def transport(self, n: int, p):
        """Image of a base point in step ``n``."""
        p = self.base.canon(p)
        if isinstance(p, EdgePoint):
            g = self.steps[n]
            return g.canon(EdgePoint(p.edge, p.t * g.edges[p.edge].length / self.base.edges[p.edge].length))
        return p

    def probe_points(self) -> list:
        """Vertices, edge midpoints and the peaks of every vertex field."""
        g = self.base
        pts = {Vertex(v) for v in g.vertices}
        for e in g.edges.values():
            pts.add(g.canon(EdgePoint(e.id, e.length / 2)))
            for v in g.vertices:
                a, b = g.vertex_distance(v, e.u), g.vertex_distance(v, e.v)
                peak = (b + e.length - a) / 2
                if 0 < peak < e.length:
                    pts.add(g.canon(EdgePoint(e.id, peak)))
        return sorted(pts, key=repr)

    def sup_deviation(self, n: int) -> Fraction:
        """``max |d_n - d|`` over pairs of probe points."""
        g, h = self.base, self.graph_at(n)
        pts = self.probe_points()
        moved = [self.transport(n, p) for p in pts]
        worst = Fraction(0)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                worst = max(worst, abs(h.distance(moved[i], moved[j]) - g.distance(pts[i], pts[j])))
        return worst

    def length_bound(self, n: int) -> Fraction:
        """``sum_e |L_n(e) - L(e)|``, a crude but rigorous bound on ``|d_n - d|``."""
        h = self.graph_at(n)
        return sum((abs(h.edges[e].length - E.length) for e, E in self.base.edges.items()), Fraction(0))


@dataclass
class StepReport:
    n: int
    delta: Fraction
    length_bound: Fraction
    max_difference: Fraction
    violations: int


def perturbation_check(F: PerturbedFamily, samples: Sequence[tuple], steps: Sequence[int] | None = None) -> list[StepReport]:
    """Per step ``n``: ``|d_H^n - d_H| <= 2 Delta_n`` on every sample."""
    out = []
    for n in (steps if steps is not None else sorted(F.steps)):
        h = F.graph_at(n)
        delta = F.sup_deviation(n)
        worst, bad = Fraction(0), 0
        for x, t, y, s in samples:
            base = hausdorff_balls(F.base, Ball(F.canon(x), t), Ball(F.canon(y), s))
            pert = hausdorff_balls(h, Ball(F.transport(n, x), t), Ball(F.transport(n, y), s))
            diff = abs(pert - base)
            worst = max(worst, diff)
            bad += diff > 2 * delta
        out.append(StepReport(n, delta, F.length_bound(n), worst, bad))
    return out


def verdict_stability(F: PerturbedFamily, probe: Sequence | None = None) -> dict:
    """Shooting verdicts at probe points for the limit and for every step."""
    from .shooting import decide_point, default_probe

    probe = default_probe(F.base) if probe is None else [F.canon(p) for p in probe]
    table = {"limit": [decide_point(F.base, p).holds for p in probe]}
    for n, h in F.steps.items():
        table[n] = [decide_point(h, F.transport(n, p)).holds for p in probe]
    return table

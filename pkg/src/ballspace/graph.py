"""Metric graphs with rays and exact distance computations.

Every length and offset is a :class:`fractions.Fraction`. Distances from a
fixed source set restricted to one edge or ray are piecewise linear with
slopes +-1, so balls, spheres and farthest points are computed exactly from
a finite set of breakpoints (:class:`DistanceField`).
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError
from .pl import Interval, PLFunction, interval_contains, merge_intervals

Seg = tuple[str, str]  # ("e", edge_id) or ("r", ray_id)


def as_scalar(x) -> Fraction:
    """Coerce ints, decimal or ``a/b`` strings and floats to an exact Fraction."""
    if isinstance(x, bool):
        raise InputError(f"not a scalar: {x!r}")
    if isinstance(x, Fraction):
        return x
    try:
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a scalar: {x!r}") from exc


@dataclass(frozen=True)
class Vertex:
    id: str

    def __repr__(self):
        return f"Vertex({self.id!r})"


@dataclass(frozen=True)
class EdgePoint:
    edge: str
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_scalar(self.t))

    def __repr__(self):
        return f"EdgePoint({self.edge!r}, {self.t})"


@dataclass(frozen=True)
class RayPoint:
    ray: str
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_scalar(self.t))

    def __repr__(self):
        return f"RayPoint({self.ray!r}, {self.t})"


GraphPoint = Vertex | EdgePoint | RayPoint


def point_key(p: GraphPoint):
    """Total order on points: vertices, then edge points, then ray points."""
    if isinstance(p, Vertex):
        return (0, p.id, Fraction(0))
    if isinstance(p, EdgePoint):
        return (1, p.edge, p.t)
    return (2, p.ray, p.t)


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction


@dataclass(frozen=True)
class Ray:
    id: str
    base: str


class MetricGraph:
    """Finite weighted graph, optionally with infinite rays attached at vertices.

    Immutable after construction. All-pairs vertex distances are computed
    once; distance fields from single points are memoised.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable = (), rays: Iterable = ()):
        self.vertices: tuple[str, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex identifiers")
        vset = set(self.vertices)

        self.edges: dict[str, Edge] = {}
        for e in edges:
            if not isinstance(e, Edge):
                eid, u, v, length = e
                e = Edge(eid, u, v, as_scalar(length))
            else:
                e = Edge(e.id, e.u, e.v, as_scalar(e.length))
            if e.id in self.edges:
                raise InputError(f"duplicate edge id {e.id!r}")
            if e.u not in vset or e.v not in vset:
                raise InputError(f"edge {e.id!r} has unknown endpoint")
            if e.length <= 0:
                raise InputError(f"edge {e.id!r} has nonpositive length {e.length}")
            self.edges[e.id] = e

        self.rays: dict[str, Ray] = {}
        for r in rays:
            if not isinstance(r, Ray):
                r = Ray(*r)
            if r.id in self.rays or r.id in self.edges:
                raise InputError(f"duplicate ray id {r.id!r}")
            if r.base not in vset:
                raise InputError(f"ray {r.id!r} has unknown base {r.base!r}")
            self.rays[r.id] = r

        if not self.edges and not self.rays:
            raise InputError("graph needs at least one edge or ray")
        self._dist, self._pred = self._all_pairs()
        if any(len(row) != len(self.vertices) for row in self._dist.values()):
            raise InputError("graph is disconnected")
        self._fields: dict = {}
        self._key = (
            self.vertices,
            tuple((e.id, e.u, e.v, e.length) for e in self.edges.values()),
            tuple((r.id, r.base) for r in self.rays.values()),
        )

    def _all_pairs(self):
        adj: dict[str, list[tuple[str, Fraction, str]]] = defaultdict(list)
        for e in self.edges.values():
            if e.u != e.v:
                adj[e.u].append((e.v, e.length, e.id))
                adj[e.v].append((e.u, e.length, e.id))
        dist, pred = {}, {}
        order = {v: i for i, v in enumerate(self.vertices)}
        for s in self.vertices:
            d = {s: Fraction(0)}
            p: dict[str, tuple[str, str]] = {}
            heap = [(Fraction(0), order[s], s)]
            done = set()
            while heap:
                du, _, u = heapq.heappop(heap)
                if u in done:
                    continue
                done.add(u)
                for w, length, eid in adj[u]:
                    nd = du + length
                    if w not in d or nd < d[w]:
                        d[w] = nd
                        p[w] = (u, eid)
                        heapq.heappush(heap, (nd, order[w], w))
            dist[s], pred[s] = d, p
        return dist, pred

    def __eq__(self, other):
        return isinstance(other, MetricGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"MetricGraph({len(self.vertices)} vertices, {len(self.edges)} edges, "
                f"{len(self.rays)} rays)")

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges.values()), Fraction(0))

    def segments(self) -> list[Seg]:
        return [("e", eid) for eid in self.edges] + [("r", rid) for rid in self.rays]

    def seg_length(self, seg: Seg) -> Fraction | None:
        """Edge length, or ``None`` for a ray."""
        return self.edges[seg[1]].length if seg[0] == "e" else None

    def vertex_distance(self, a: str, b: str) -> Fraction:
        return self._dist[a][b]

    # ------------------------------------------------------------------
    # points

    def vertex(self, vid: str) -> Vertex:
        return self.canon(Vertex(vid))

    def edge_point(self, eid: str, t) -> GraphPoint:
        return self.canon(EdgePoint(eid, t))

    def ray_point(self, rid: str, t) -> GraphPoint:
        return self.canon(RayPoint(rid, t))

    def point_at(self, seg: Seg, t) -> GraphPoint:
        if seg[0] == "e":
            return self.canon(EdgePoint(seg[1], t))
        return self.canon(RayPoint(seg[1], t))

    def canon(self, p: GraphPoint) -> GraphPoint:
        """Validate ``p`` and return its canonical form (endpoints become vertices)."""
        if isinstance(p, Vertex):
            if p.id not in self._dist:
                raise InputError(f"unknown vertex {p.id!r}")
            return p
        if isinstance(p, EdgePoint):
            e = self.edges.get(p.edge)
            if e is None:
                raise InputError(f"unknown edge {p.edge!r}")
            if not 0 <= p.t <= e.length:
                raise InputError(f"offset {p.t} outside edge {p.edge!r} of length {e.length}")
            if p.t == 0:
                return Vertex(e.u)
            if p.t == e.length:
                return Vertex(e.v)
            return p
        if isinstance(p, RayPoint):
            r = self.rays.get(p.ray)
            if r is None:
                raise InputError(f"unknown ray {p.ray!r}")
            if p.t < 0:
                raise InputError(f"negative ray offset {p.t}")
            if p.t == 0:
                return Vertex(r.base)
            return p
        raise InputError(f"not a graph point: {p!r}")

    def locate(self, p: GraphPoint) -> list[tuple[Seg, Fraction]]:
        """All ``(segment, offset)`` positions of a canonical point."""
        if isinstance(p, EdgePoint):
            return [(("e", p.edge), p.t)]
        if isinstance(p, RayPoint):
            return [(("r", p.ray), p.t)]
        out = []
        for e in self.edges.values():
            if e.u == p.id:
                out.append((("e", e.id), Fraction(0)))
            if e.v == p.id:
                out.append((("e", e.id), e.length))
        for r in self.rays.values():
            if r.base == p.id:
                out.append((("r", r.id), Fraction(0)))
        return out

    def _anchors(self, p: GraphPoint) -> list[tuple[str, Fraction, Fraction]]:
        """``(vertex, distance along own segment, segment offset of that vertex)``."""
        if isinstance(p, Vertex):
            return [(p.id, Fraction(0), Fraction(0))]
        if isinstance(p, EdgePoint):
            e = self.edges[p.edge]
            return [(e.u, p.t, Fraction(0)), (e.v, e.length - p.t, e.length)]
        r = self.rays[p.ray]
        return [(r.base, p.t, Fraction(0))]

    def _to_vertex(self, p: GraphPoint, v: str) -> Fraction:
        return min(off + self._dist[a][v] for a, off, _ in self._anchors(p))

    # ------------------------------------------------------------------
    # distances

    def distance(self, p: GraphPoint, q: GraphPoint) -> Fraction:
        p, q = self.canon(p), self.canon(q)
        if p == q:
            return Fraction(0)
        best = None
        if type(p) is type(q) and not isinstance(p, Vertex) and _seg_of(p) == _seg_of(q):
            best = abs(p.t - q.t)
        for a, oa, _ in self._anchors(p):
            for b, ob, _ in self._anchors(q):
                cand = oa + self._dist[a][b] + ob
                if best is None or cand < best:
                    best = cand
        return best

    def field(self, sources: GraphPoint | Iterable[GraphPoint]) -> DistanceField:
        """Distance-to-set field for one point or a finite set of points."""
        if isinstance(sources, (Vertex, EdgePoint, RayPoint)):
            sources = (sources,)
        srcs = tuple(sorted({self.canon(s) for s in sources}, key=point_key))
        if not srcs:
            raise InputError("empty source set")
        cached = self._fields.get(srcs)
        if cached is None:
            if len(self._fields) > 8192:
                self._fields.clear()
            cached = self._fields[srcs] = _build_field(self, srcs)
        return cached


def _seg_of(p: GraphPoint) -> Seg | None:
    if isinstance(p, EdgePoint):
        return ("e", p.edge)
    if isinstance(p, RayPoint):
        return ("r", p.ray)
    return None


@dataclass(frozen=True)
class DistanceField:
    """Exact ``y -> dist(y, sources)`` on every edge and ray of a graph."""

    graph: MetricGraph
    sources: tuple[GraphPoint, ...]
    vertex: Mapping[str, Fraction]
    segment: Mapping[Seg, PLFunction]

    def __call__(self, p: GraphPoint) -> Fraction:
        p = self.graph.canon(p)
        if isinstance(p, Vertex):
            return self.vertex[p.id]
        return self.segment[_seg_of(p)](p.t)


def _build_field(g: MetricGraph, srcs: tuple[GraphPoint, ...]) -> DistanceField:
    dv = {v: min(g._to_vertex(s, v) for s in srcs) for v in g.vertices}
    apexes: dict[Seg, list[Fraction]] = defaultdict(list)
    for s in srcs:
        seg = _seg_of(s)
        if seg is not None:
            apexes[seg].append(s.t)
    half = Fraction(1, 2)
    segs: dict[Seg, PLFunction] = {}

    for e in g.edges.values():
        seg = ("e", e.id)
        L, a, b = e.length, dv[e.u], dv[e.v]
        ts = apexes.get(seg, [])

        def f(t, a=a, b=b, L=L, ts=ts):
            return min([a + t, b + L - t] + [abs(t - ti) for ti in ts])

        cands = {Fraction(0), L, (b + L - a) * half}
        for ti in ts:
            cands.update((ti, (ti - a) * half, (b + L + ti) * half))
        for ti, tj in combinations(ts, 2):
            cands.add((ti + tj) * half)
        segs[seg] = PLFunction.from_candidates((c for c in cands if 0 <= c <= L), f)

    for r in g.rays.values():
        seg = ("r", r.id)
        a = dv[r.base]
        ts = apexes.get(seg, [])

        def f(t, a=a, ts=ts):
            return min([a + t] + [abs(t - ti) for ti in ts])

        cands = {Fraction(0)}
        for ti in ts:
            cands.update((ti, (ti - a) * half))
        for ti, tj in combinations(ts, 2):
            cands.add((ti + tj) * half)
        segs[seg] = PLFunction.from_candidates((c for c in cands if c >= 0), f, tail=Fraction(1))

    return DistanceField(g, srcs, dv, segs)


def graph_distance(g: MetricGraph, p: GraphPoint, q: GraphPoint) -> Fraction:
    """Length of a shortest path between two points of ``g``."""
    return g.distance(p, q)


# ----------------------------------------------------------------------
# compact PL subsets


class PLSubset:
    """Compact subset of a graph: closed intervals per edge and per ray.

    The constructor canonicalises: intervals are merged, and a vertex that
    belongs to the set is recorded on every incident edge and ray, so two
    equal sets always have equal representations.
    """

    __slots__ = ("graph", "_segs")

    def __init__(self, graph: MetricGraph, edges: Mapping | None = None, rays: Mapping | None = None):
        self.graph = graph
        raw: dict[Seg, list[Interval]] = defaultdict(list)
        for kind, table in (("e", edges or {}), ("r", rays or {})):
            for sid, ivs in table.items():
                seg = (kind, sid)
                if kind == "e" and sid not in graph.edges:
                    raise InputError(f"unknown edge {sid!r}")
                if kind == "r" and sid not in graph.rays:
                    raise InputError(f"unknown ray {sid!r}")
                L = graph.seg_length(seg)
                for lo, hi in ivs:
                    lo, hi = as_scalar(lo), as_scalar(hi)
                    if lo > hi or lo < 0 or (L is not None and hi > L):
                        raise InputError(f"bad interval [{lo}, {hi}] on {sid!r}")
                    raw[seg].append((lo, hi))

        members = set()
        for seg, ivs in raw.items():
            for lo, hi in ivs:
                for t in (lo, hi):
                    p = graph.point_at(seg, t)
                    if isinstance(p, Vertex):
                        members.add(p)
        for v in members:
            for seg, t in graph.locate(v):
                raw[seg].append((t, t))
        self._segs = {seg: merge_intervals(ivs) for seg, ivs in raw.items() if ivs}

    @classmethod
    def from_segments(cls, graph: MetricGraph, segs: Mapping[Seg, Sequence[Interval]]) -> PLSubset:
        edges = {sid: ivs for (kind, sid), ivs in segs.items() if kind == "e"}
        rays = {sid: ivs for (kind, sid), ivs in segs.items() if kind == "r"}
        return cls(graph, edges, rays)

    @classmethod
    def point(cls, graph: MetricGraph, p: GraphPoint) -> PLSubset:
        p = graph.canon(p)
        seg, t = graph.locate(p)[0]
        return cls.from_segments(graph, {seg: [(t, t)]})

    def intervals(self, seg: Seg) -> tuple[Interval, ...]:
        return self._segs.get(seg, ())

    def items(self) -> Iterator[tuple[Seg, tuple[Interval, ...]]]:
        for seg in self.graph.segments():
            if seg in self._segs:
                yield seg, self._segs[seg]

    @property
    def edges(self) -> dict[str, tuple[Interval, ...]]:
        return {sid: ivs for (kind, sid), ivs in self.items() if kind == "e"}

    @property
    def rays(self) -> dict[str, tuple[Interval, ...]]:
        return {sid: ivs for (kind, sid), ivs in self.items() if kind == "r"}

    def is_empty(self) -> bool:
        return not self._segs

    def contains(self, p: GraphPoint) -> bool:
        p = self.graph.canon(p)
        return any(interval_contains(self.intervals(seg), t) for seg, t in self.graph.locate(p))

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def endpoints(self) -> list[GraphPoint]:
        """Canonical points at interval ends; contains the topological boundary."""
        pts = {self.graph.point_at(seg, t) for seg, ivs in self._segs.items() for iv in ivs for t in iv}
        return sorted(pts, key=point_key)

    def issubset(self, other: PLSubset) -> bool:
        _check_same(self, other)
        for seg, ivs in self._segs.items():
            theirs = other.intervals(seg)
            for lo, hi in ivs:
                if not any(a <= lo and hi <= b for a, b in theirs):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PLSubset):
            return NotImplemented
        return self.graph == other.graph and self._segs == other._segs

    def __hash__(self):
        return hash(tuple(sorted(self._segs.items())))

    def __repr__(self):
        parts = [f"{k}:{sid}=" + ",".join(f"[{lo},{hi}]" for lo, hi in ivs)
                 for (k, sid), ivs in self.items()]
        return "PLSubset(" + " ".join(parts) + ")"


def _check_same(a: PLSubset, b: PLSubset):
    if a.graph != b.graph:
        raise InputError("subsets live on different graphs")


def subset_contains(S: PLSubset, p: GraphPoint) -> bool:
    return S.contains(p)


def subset_equal(S1: PLSubset, S2: PLSubset) -> bool:
    _check_same(S1, S2)
    return S1 == S2


# ----------------------------------------------------------------------
# balls and spheres


def ball_subset(g: MetricGraph, center: GraphPoint, r) -> PLSubset:
    """Closed ball ``{p : d(center, p) <= r}`` as an exact PL subset."""
    r = as_scalar(r)
    if r < 0:
        raise InputError(f"negative radius {r}")
    fld = g.field(center)
    return PLSubset.from_segments(g, {seg: fld.segment[seg].sublevel(r) for seg in g.segments()})


def sphere_points(g: MetricGraph, center: GraphPoint, r) -> list[GraphPoint]:
    """Metric sphere ``{p : d(center, p) == r}``, sorted canonically."""
    r = as_scalar(r)
    if r < 0:
        raise InputError(f"negative radius {r}")
    fld = g.field(center)
    pts = set()
    for seg in g.segments():
        for lo, hi in fld.segment[seg].level(r):
            # slopes are +-1, so every solution is isolated
            assert lo == hi, "distance field has a flat piece"
            pts.add(g.point_at(seg, lo))
    return sorted(pts, key=point_key)


def _directions(g: MetricGraph, p: GraphPoint, fld: DistanceField):
    """Value of the field a little way along each direction leaving ``p``.

    The step is half the gap to the next breakpoint, so the field is linear
    on it and the sign of ``value - fld(p)`` is the exact directional slope.
    """
    for seg, t in g.locate(p):
        f = fld.segment[seg]
        L = g.seg_length(seg)
        ks = [k for k, _ in f.knots]
        ahead = [k for k in ks if k > t] + ([L] if L is not None and L > t else [])
        if ahead or L is None:
            nxt = min(ahead) if ahead else t + 2
            yield f(t + (nxt - t) / 2)
        behind = [k for k in ks if k < t]
        if behind or t > 0:
            prv = max(behind) if behind else Fraction(0)
            yield f(t - (t - prv) / 2)


def ball_boundary(g: MetricGraph, center: GraphPoint, r) -> list[GraphPoint]:
    """Topological boundary of the closed ball: sphere points the distance can grow past."""
    r = as_scalar(r)
    fld = g.field(center)
    return [p for p in sphere_points(g, center, r) if any(v > r for v in _directions(g, p, fld))]


def farthest_in(g: MetricGraph, S: PLSubset, target: GraphPoint) -> tuple[GraphPoint, Fraction]:
    """A point of ``S`` maximising the distance to ``target``, and that distance."""
    if S.is_empty():
        raise InputError("empty set")
    fld = g.field(target)
    best = None
    for seg, ivs in S.items():
        f = fld.segment[seg]
        for lo, hi in ivs:
            t, v = f.max_on(lo, hi)
            if best is None or v > best[1]:
                best = (seg, t), v
    (seg, t), v = best
    return g.point_at(seg, t), v


def farthest_distance(g: MetricGraph, center: GraphPoint, r, target: GraphPoint) -> Fraction:
    """``max_{p in closed ball(center, r)} d(target, p)``."""
    return farthest_in(g, ball_subset(g, center, r), target)[1]


def eccentricity(g: MetricGraph, x: GraphPoint) -> Fraction:
    """Largest distance from ``x``; only finite for ray-free graphs."""
    if g.rays:
        raise InputError("eccentricity is infinite on a graph with rays")
    fld = g.field(x)
    return max(f.max_on(f.lo, f.last)[1] for f in fld.segment.values())


# ----------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class Geodesic:
    """A shortest path, as consecutive legs ``(segment, t_from, t_to)``."""

    graph: MetricGraph
    start: GraphPoint
    end: GraphPoint
    legs: tuple[tuple[Seg, Fraction, Fraction], ...]

    @property
    def length(self) -> Fraction:
        return sum((abs(b - a) for _, a, b in self.legs), Fraction(0))

    def point(self, s) -> GraphPoint:
        """Point at arc length ``s`` from the start."""
        s = as_scalar(s)
        if not 0 <= s <= self.length:
            raise InputError(f"arc length {s} outside [0, {self.length}]")
        if s == 0:
            return self.start
        for seg, a, b in self.legs:
            step = abs(b - a)
            if s <= step:
                return self.graph.point_at(seg, a + s if b >= a else a - s)
            s -= step
        return self.end


def geodesic(g: MetricGraph, x: GraphPoint, y: GraphPoint) -> Geodesic:
    x, y = g.canon(x), g.canon(y)
    d = g.distance(x, y)
    sx, sy = _seg_of(x), _seg_of(y)
    if x == y:
        return Geodesic(g, x, y, ())
    if sx is not None and sx == sy and abs(x.t - y.t) == d:
        return Geodesic(g, x, y, ((sx, x.t, y.t),))
    for a, oa, ta in g._anchors(x):
        for b, ob, tb in g._anchors(y):
            if oa + g._dist[a][b] + ob != d:
                continue
            legs = []
            if sx is not None:
                legs.append((sx, x.t, ta))
            chain = []
            v = b
            while v != a:
                u, eid = g._pred[a][v]
                chain.append((u, eid))
                v = u
            for u, eid in reversed(chain):
                e = g.edges[eid]
                legs.append((("e", eid), Fraction(0), e.length) if e.u == u
                            else (("e", eid), e.length, Fraction(0)))
            if sy is not None:
                legs.append((sy, tb, y.t))
            return Geodesic(g, x, y, tuple(legs))
    raise AssertionError("no anchor pair realises the distance")


# ----------------------------------------------------------------------
# isometries


class GraphIsometry:
    """Length-preserving automorphism of a metric graph.

    Given by a vertex permutation and a ray permutation; the edge map is
    inferred from endpoints and lengths unless given explicitly as
    ``{edge: (image_edge, reversed)}``.
    """

    def __init__(self, graph: MetricGraph, vertex_map: Mapping[str, str],
                 ray_map: Mapping[str, str] | None = None,
                 edge_map: Mapping[str, tuple[str, bool]] | None = None):
        self.graph = graph
        vmap = {v: vertex_map.get(v, v) for v in graph.vertices}
        if sorted(vmap.values()) != sorted(graph.vertices):
            raise InputError("vertex map is not a permutation of the vertices")
        rmap = {r: (ray_map or {}).get(r, r) for r in graph.rays}
        if sorted(rmap.values()) != sorted(graph.rays):
            raise InputError("ray map is not a permutation of the rays")
        for rid, img in rmap.items():
            if vmap[graph.rays[rid].base] != graph.rays[img].base:
                raise InputError(f"ray {rid!r} base does not follow the vertex map")
        if edge_map is None:
            edge_map = self._infer_edges(vmap)
        emap = {}
        for eid, e in graph.edges.items():
            if eid not in edge_map:
                raise InputError(f"edge map misses {eid!r}")
            img, rev = edge_map[eid]
            f = graph.edges.get(img)
            if f is None or f.length != e.length:
                raise InputError(f"edge {eid!r} maps to an edge of different length")
            ends = (vmap[e.v], vmap[e.u]) if rev else (vmap[e.u], vmap[e.v])
            if (f.u, f.v) != ends:
                raise InputError(f"edge {eid!r} image endpoints do not match")
            emap[eid] = (img, bool(rev))
        if sorted(i for i, _ in emap.values()) != sorted(graph.edges):
            raise InputError("edge map is not a bijection")
        for a, b in combinations(graph.vertices, 2):
            if graph.vertex_distance(a, b) != graph.vertex_distance(vmap[a], vmap[b]):
                raise InputError(f"map does not preserve d({a}, {b})")
        self.vmap, self.rmap, self.emap = vmap, rmap, emap

    def _infer_edges(self, vmap):
        used = set()
        out = {}
        for eid, e in self.graph.edges.items():
            want = {vmap[e.u], vmap[e.v]}
            for fid, f in self.graph.edges.items():
                if fid not in used and {f.u, f.v} == want and f.length == e.length:
                    used.add(fid)
                    out[eid] = (fid, (f.u, f.v) != (vmap[e.u], vmap[e.v]))
                    break
            else:
                raise InputError(f"no image for edge {eid!r} (adjacency not preserved)")
        return out

    @classmethod
    def identity(cls, graph: MetricGraph) -> GraphIsometry:
        return cls(graph, {v: v for v in graph.vertices}, {r: r for r in graph.rays},
                   {e: (e, False) for e in graph.edges})

    def __call__(self, p: GraphPoint) -> GraphPoint:
        p = self.graph.canon(p)
        if isinstance(p, Vertex):
            return Vertex(self.vmap[p.id])
        if isinstance(p, EdgePoint):
            img, rev = self.emap[p.edge]
            return self.graph.canon(EdgePoint(img, self.graph.edges[img].length - p.t if rev else p.t))
        return self.graph.canon(RayPoint(self.rmap[p.ray], p.t))

    def compose(self, other: GraphIsometry) -> GraphIsometry:
        """``self`` after ``other``."""
        g = self.graph
        emap = {}
        for eid in g.edges:
            mid, r1 = other.emap[eid]
            img, r2 = self.emap[mid]
            emap[eid] = (img, r1 != r2)
        return GraphIsometry(g, {v: self.vmap[other.vmap[v]] for v in g.vertices},
                             {r: self.rmap[other.rmap[r]] for r in g.rays}, emap)

    def inverse(self) -> GraphIsometry:
        g = self.graph
        return GraphIsometry(g, {b: a for a, b in self.vmap.items()},
                             {b: a for a, b in self.rmap.items()},
                             {img: (eid, rev) for eid, (img, rev) in self.emap.items()})

    def key(self):
        return (tuple(sorted(self.vmap.items())), tuple(sorted(self.rmap.items())),
                tuple(sorted(self.emap.items())))

    def __eq__(self, other):
        return isinstance(other, GraphIsometry) and self.graph == other.graph and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        moved = {a: b for a, b in self.vmap.items() if a != b}
        return f"GraphIsometry({moved or 'identity'})"

"""Brute-force epsilon-net oracle.

A graph is subdivided uniformly (rays truncated at depth ``T``) and all
node-to-node shortest paths are computed by scipy. No piecewise-linear
reasoning is used, so this shares no failure modes with the exact engine.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError
from .graph import MetricGraph, PLSubset, Vertex, as_scalar
from .shooting import probe_depth


@dataclass
class EpsilonNet:
    graph: MetricGraph
    eps: Fraction
    depth: Fraction
    positions: list          # per node: vertex id or (seg, t)
    seg_nodes: dict          # seg -> list of (t, node index), sorted by t
    table: np.ndarray

    @property
    def size(self) -> int:
        return len(self.positions)


def default_depth(g: MetricGraph) -> Fraction:
    """Deep-probe offset of the exact engine, maximised over vertices, plus one."""
    return max(probe_depth(g, Vertex(v)) for v in g.vertices) + 1


def build_net(g: MetricGraph, eps, depth=None) -> EpsilonNet:
    eps = as_scalar(eps)
    if eps <= 0:
        raise InputError(f"eps must be positive, got {eps}")
    depth = default_depth(g) if depth is None else as_scalar(depth)
    if g.rays and depth <= 0:
        raise InputError("ray truncation depth must be positive")
    index = {v: i for i, v in enumerate(g.vertices)}
    positions: list = list(g.vertices)
    seg_nodes: dict = {}
    rows, cols, wts = [], [], []

    def chain(seg, start, length, end_vertex):
        k = max(1, math.ceil(length / eps))
        step = length / k
        nodes = [(Fraction(0), start)]
        for j in range(1, k):
            positions.append((seg, j * step))
            nodes.append((j * step, len(positions) - 1))
        if end_vertex is not None:
            nodes.append((length, end_vertex))
        else:
            positions.append((seg, length))
            nodes.append((length, len(positions) - 1))
        for (t0, a), (t1, b) in zip(nodes, nodes[1:]):
            rows.append(a)
            cols.append(b)
            wts.append(float(t1 - t0))
        seg_nodes[seg] = nodes

    for e in g.edges.values():
        chain(("e", e.id), index[e.u], e.length, index[e.v])
    for r in g.rays.values():
        chain(("r", r.id), index[r.base], depth, None)

    n = len(positions)
    adj = coo_matrix((wts, (rows, cols)), shape=(n, n)).tocsr()
    table = shortest_path(adj, method="D", directed=False)
    return EpsilonNet(g, eps, depth, positions, seg_nodes, table)


def _brackets(net: EpsilonNet, p) -> list[tuple[int, float]]:
    """Nodes next to ``p`` with their along-segment offsets."""
    g = net.graph
    p = g.canon(p)
    if isinstance(p, Vertex):
        return [(g.vertices.index(p.id), 0.0)]
    seg, t = g.locate(p)[0]
    if seg[0] == "r" and t > net.depth:
        raise InputError(f"point {p!r} lies beyond the truncation depth {net.depth}")
    nodes = net.seg_nodes[seg]
    for (t0, a), (t1, b) in zip(nodes, nodes[1:]):
        if t0 <= t <= t1:
            return [(a, float(t - t0)), (b, float(t1 - t))]
    raise AssertionError("point not bracketed")


def distance_row(net: EpsilonNet, p) -> np.ndarray:
    """Oracle distances from ``p`` to every node."""
    return np.min([off + net.table[i] for i, off in _brackets(net, p)], axis=0)


def oracle_distance(net: EpsilonNet, p, q) -> float:
    row = distance_row(net, p)
    return float(min(off + row[i] for i, off in _brackets(net, q)))


def _node_in(net: EpsilonNet, i: int, S: PLSubset) -> bool:
    pos = net.positions[i]
    if isinstance(pos, str):
        return S.contains(Vertex(pos))
    seg, t = pos
    return any(lo <= t <= hi for lo, hi in S.intervals(seg))


def subset_nodes(net: EpsilonNet, S: PLSubset) -> np.ndarray:
    """Nodes inside ``S`` plus the nodes bracketing each interval end."""
    for (kind, rid), ivs in S.items():
        if kind == "r" and ivs[-1][1] > net.depth:
            raise InputError(f"subset reaches past the truncation depth on ray {rid!r}")
    idx = {i for i in range(net.size) if _node_in(net, i, S)}
    for p in S.endpoints():
        br = _brackets(net, p)
        idx.add(min(br, key=lambda item: item[1])[0])
    return np.array(sorted(idx))


def oracle_hausdorff(net: EpsilonNet, A: PLSubset, B: PLSubset) -> float:
    """Discrete max-min over the nodes of ``A`` and ``B``; within ``2 eps``."""
    ia, ib = subset_nodes(net, A), subset_nodes(net, B)
    sub = net.table[np.ix_(ia, ib)]
    return float(max(sub.min(axis=1).max(), sub.min(axis=0).max()))


def _ball_mask(net: EpsilonNet, row: np.ndarray, r) -> np.ndarray:
    mask = row <= float(r) + float(net.eps) / 2
    for seg, nodes in net.seg_nodes.items():
        if seg[0] == "r" and mask[nodes[-1][1]]:
            raise InputError(f"ball of radius {r} reaches the truncation depth on ray {seg[1]!r}")
    return mask


def oracle_gap(net: EpsilonNet, x, y, r) -> float:
    """``d(y, x) + r - max d(y, .)`` over nodes within ``r + eps/2`` of ``x``."""
    rx = distance_row(net, x)
    ry = distance_row(net, y)
    mask = _ball_mask(net, rx, r)
    dyx = min(off + rx[i] for i, off in _brackets(net, y))
    return float(dyx + float(r) - ry[mask].max())


def safe_radius(net: EpsilonNet, x) -> float:
    """Largest radius whose ball about ``x`` stays clear of the truncation."""
    rx = distance_row(net, x)
    ends = [rx[nodes[-1][1]] for seg, nodes in net.seg_nodes.items() if seg[0] == "r"]
    return float(min(ends)) - float(net.eps) if ends else math.inf


def shooting_sweep(net: EpsilonNet, x, radii=None) -> tuple[float, int, float]:
    """Largest oracle gap at ``x`` over all nodes ``y`` and the given radii.

    Returns ``(gap, node index of y, r)``. Radii default to a grid of
    step ``eps`` up to the safe radius (or the eccentricity plus one on a
    ray-free graph).
    """
    rx = distance_row(net, x)
    if radii is None:
        top = safe_radius(net, x)
        if math.isinf(top):
            top = float(rx.max()) + 1
        k = max(1, int(top / float(net.eps)))
        radii = [top * j / k for j in range(1, k + 1)]
    best = (-math.inf, -1, 0.0)
    for r in radii:
        mask = rx <= float(r) + float(net.eps) / 2
        far = net.table[:, mask].max(axis=1)
        gaps = rx + float(r) - far
        gaps[rx <= float(net.eps) / 2] = -math.inf  # y too close to x to matter
        j = int(np.argmax(gaps))
        if gaps[j] > best[0]:
            best = (float(gaps[j]), j, float(r))
    return best


def oracle_verdict(net: EpsilonNet, x) -> bool:
    """Holds if no sampled gap exceeds ``2 eps``."""
    return shooting_sweep(net, x)[0] <= 2 * float(net.eps)


def node_point(net: EpsilonNet, i: int):
    pos = net.positions[i]
    if isinstance(pos, str):
        return Vertex(pos)
    return net.graph.point_at(*pos)


# line and circle helpers ---------------------------------------------------


def _sup_inf(pa: np.ndarray, pb: np.ndarray, dist) -> float:
    D = dist(pa[:, None], pb[None, :])
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))


def line_hausdorff_oracle(I, J, eps) -> float:
    """Sup-inf distance of grid samples of two intervals."""
    eps = float(eps)
    grid = lambda a, b: np.linspace(float(a), float(b), max(2, math.ceil((float(b) - float(a)) / eps) + 1))
    return _sup_inf(grid(*I), grid(*J), lambda a, b: np.abs(a - b))


def circle_ball_samples(radius: float, center: float, t: float, eps: float) -> np.ndarray:
    half = min(t / radius, math.pi)
    k = max(2, math.ceil(2 * half * radius / eps) + 1)
    return center + np.linspace(-half, half, k)


def circle_hausdorff_oracle(radius: float, x, t, y, s, eps) -> float:
    def dist(a, b):
        delta = np.abs(np.mod(a - b, 2 * math.pi))
        return radius * np.minimum(delta, 2 * math.pi - delta)

    return _sup_inf(circle_ball_samples(radius, x, t, eps), circle_ball_samples(radius, y, s, eps), dist)


# comparison report -----------------------------------------------------------


@dataclass(frozen=True)
class CompareRow:
    operation: str
    digest: str
    exact: Fraction
    oracle: float
    bound: float

    @property
    def ok(self) -> bool:
        return abs(float(self.exact) - self.oracle) <= self.bound + 1e-12


def digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:12]


def compare(g: MetricGraph, eps, depth=None, n: int = 30, seed: int = 0) -> list[CompareRow]:
    """Exact Hausdorff distances and gaps against the oracle on seeded samples."""
    from .graph import ball_subset
    from .hausdorff import hausdorff_pl
    from .io import point_to_json, scalar_to_json
    from .sampling import MAX_RADIUS, RAY_DEPTH, sample_quadruples
    from .shooting import shooting_gap

    if depth is None:
        depth = max(default_depth(g), RAY_DEPTH + MAX_RADIUS + 1)
    net = build_net(g, eps, depth)
    bound = 2 * float(net.eps)
    rows = []
    for x, t, y, s in sample_quadruples(g, n, seed):
        key = [point_to_json(x), scalar_to_json(t), point_to_json(y), scalar_to_json(s)]
        A, B = ball_subset(g, x, t), ball_subset(g, y, s)
        rows.append(CompareRow("hausdorff", digest(key), hausdorff_pl(g, A, B),
                               oracle_hausdorff(net, A, B), bound))
        if g.distance(x, y) > 0 and t > 0:
            rows.append(CompareRow("gap", digest(key[:3]), shooting_gap(g, x, y, t),
                                   oracle_gap(net, x, y, t), bound))
    return rows

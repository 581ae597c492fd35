from __future__ import annotations

import math
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from ballspace.bundled import load_bundled
from ballspace.graph import EdgePoint, MetricGraph, RayPoint, Vertex, ball_subset, subset_contains
from ballspace.hausdorff import Ball, hausdorff_balls, hausdorff_intervals
from ballspace.io import point_from_json, point_to_json, scalar_from_json, scalar_to_json
from ballspace.models import Circle, Euclidean

DIAMOND = load_bundled("diamond")
CHAIN = load_bundled("chain")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radii = st.fractions(min_value=0, max_value=6, max_denominator=8)


@st.composite
def graph_points(draw, g: MetricGraph):
    kind = draw(st.sampled_from(["v", "e", "r"] if g.rays else ["v", "e"]))
    if kind == "v":
        return Vertex(draw(st.sampled_from(list(g.vertices))))
    if kind == "e":
        e = g.edges[draw(st.sampled_from(sorted(g.edges)))]
        return g.canon(EdgePoint(e.id, draw(st.fractions(0, e.length, max_denominator=8))))
    return g.canon(RayPoint(draw(st.sampled_from(sorted(g.rays))), draw(st.fractions(0, 6, max_denominator=8))))


@settings(max_examples=60, deadline=None)
@given(graph_points(DIAMOND), radii, graph_points(DIAMOND), radii, graph_points(DIAMOND), radii)
def test_hausdorff_is_pseudometric_and_lipschitz(x, t, y, s, z, u):
    b1, b2, b3 = Ball(x, t), Ball(y, s), Ball(z, u)
    d12 = hausdorff_balls(DIAMOND, b1, b2)
    assert d12 == hausdorff_balls(DIAMOND, b2, b1)
    assert d12 <= hausdorff_balls(DIAMOND, b1, b3) + hausdorff_balls(DIAMOND, b3, b2)
    assert d12 <= DIAMOND.distance(x, y) + abs(t - s)


@settings(max_examples=60, deadline=None)
@given(graph_points(CHAIN), radii, graph_points(CHAIN))
def test_ball_membership(x, r, p):
    assert subset_contains(ball_subset(CHAIN, x, r), p) == (CHAIN.distance(x, p) <= r)


@given(rationals, radii, rationals, radii)
def test_interval_hausdorff_metric(a, t, c, s):
    I, J = (a - t, a + t), (c - s, c + s)
    d = hausdorff_intervals(I, J)
    assert d == hausdorff_intervals(J, I) and d >= 0
    assert d == abs(a - c) + abs(t - s)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0, 4), st.floats(-5, 5), st.floats(-5, 5), st.floats(0, 4))
def test_euclidean_balls_taxicab(a, b, t, c, d, s):
    e = Euclidean(2)
    got = hausdorff_balls(e, Ball((a, b), t), Ball((c, d), s))
    assert math.isclose(got, math.dist((a, b), (c, d)) + abs(t - s), abs_tol=1e-9)


@given(st.floats(0, 6.3), st.floats(0, 4), st.floats(0, 6.3), st.floats(0, 4))
def test_circle_lipschitz(x, t, y, s):
    c = Circle(1.0)
    got = hausdorff_balls(c, Ball(x, t), Ball(y, s))
    assert 0 <= got <= c.distance(x, y) + abs(t - s) + 1e-9


@given(rationals)
def test_scalar_round_trip(q):
    assert scalar_from_json(scalar_to_json(q)) == q


@settings(max_examples=40)
@given(graph_points(DIAMOND))
def test_point_round_trip(p):
    assert point_from_json(DIAMOND, point_to_json(p)) == p

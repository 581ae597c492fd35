from __future__ import annotations

import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from ballspace.errors import InputError
from ballspace.graph import EdgePoint, PLSubset, RayPoint, Vertex, ball_subset
from ballspace.hausdorff import (Ball, directed_hausdorff, hausdorff_balls, hausdorff_intervals,
                                 hausdorff_pl, taxicab)
from ballspace.models import Circle, HalfPlane, Line
from ballspace.oracle import circle_hausdorff_oracle, line_hausdorff_oracle


def test_diamond_ray_balls(diamond):
    B1, B2 = Ball(Vertex("W"), 1), Ball(Vertex("E"), 1)
    assert hausdorff_balls(diamond, B1, B2) == 4
    assert taxicab(diamond, B1, B2) == 4


def test_bent_equal_balls(bent):
    assert hausdorff_balls(bent, Ball(Vertex("P"), 2), Ball(Vertex("Q"), 2)) == 0


def test_directed_is_asymmetric(diamond):
    small = PLSubset.point(diamond, Vertex("N"))
    big = ball_subset(diamond, Vertex("N"), 2)
    assert directed_hausdorff(diamond, small, big)[0] == 0
    d, p = directed_hausdorff(diamond, big, small)
    assert d == 2 and diamond.distance(p, Vertex("N")) == 2


def test_empty_subset_rejected(diamond):
    with pytest.raises(InputError):
        hausdorff_pl(diamond, PLSubset(diamond), ball_subset(diamond, Vertex("N"), 1))


def test_interval_formula():
    assert hausdorff_intervals((0, 2), (1, 5)) == 3
    rng = random.Random(3)
    for _ in range(50):
        a, c = F(rng.randint(-40, 40), 7), F(rng.randint(-40, 40), 7)
        I, J = (a, a + F(rng.randint(0, 30), 7)), (c, c + F(rng.randint(0, 30), 7))
        assert abs(float(hausdorff_intervals(I, J)) - line_hausdorff_oracle(I, J, 1 / 512)) <= 1 / 256


def test_line_balls():
    line = Line()
    assert hausdorff_balls(line, Ball(F(0), F(1)), Ball(F(2), F(3))) == 4


def test_circle_balls():
    c = Circle(1.0)
    assert hausdorff_balls(c, Ball(0.0, math.pi), Ball(1.0, math.pi)) == 0
    rng = random.Random(4)
    for _ in range(30):
        x, y = rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        t, s = rng.uniform(0, 3.5), rng.uniform(0, 3.5)
        got = hausdorff_balls(c, Ball(x, t), Ball(y, s))
        assert abs(got - circle_hausdorff_oracle(1.0, x, t, y, s, 1e-3)) <= 2e-3


def _halfplane_ball(h, x, t, n=61):
    us = np.linspace(x[0] - t, x[0] + t, n)
    vs = np.linspace(max(0.0, x[1] - t), x[1] + t, n)
    pts = [(u, v) for u in us for v in vs if h.distance(x, (u, v)) <= t]
    return pts or [x]


def test_halfplane_against_samples():
    h = HalfPlane()
    rng = random.Random(5)
    for _ in range(6):
        x = (rng.uniform(-2, 2), rng.uniform(0, 2))
        y = (rng.uniform(-2, 2), rng.uniform(0, 2))
        t, s = rng.uniform(0.1, 3), rng.uniform(0.1, 3)
        A, B = np.array(_halfplane_ball(h, x, t)), np.array(_halfplane_ball(h, y, s))
        D = np.hypot(A[:, None, 0] - B[None, :, 0], A[:, None, 1] - B[None, :, 1])
        brute = max(D.min(axis=1).max(), D.min(axis=0).max())
        assert abs(hausdorff_balls(h, Ball(x, t), Ball(y, s)) - brute) <= 0.15


def test_negative_radius_rejected():
    with pytest.raises(InputError):
        Ball(Vertex("N"), -1)


def test_ray_ball_far_side(diamond):
    A = ball_subset(diamond, RayPoint("rW", 3), 1)
    B = ball_subset(diamond, EdgePoint("WN", 1), 1)
    assert hausdorff_pl(diamond, A, B) == 4

from __future__ import annotations

import math
import random
from fractions import Fraction as F

import pytest
from scipy.integrate import quad

from ballspace.errors import InputError
from ballspace.models import (Circle, Euclidean, HalfPlane, Hyperbolic2, Line, model_gap,
                              shooting_witness, witness_residuals)
from ballspace.sampling import sample_point

TOL = 1e-9


def _poincare_length(z_abs: float) -> float:
    """Hyperbolic length of the radial segment [0, z] in the Poincare disc."""
    return quad(lambda r: 2.0 / (1.0 - r * r), 0.0, z_abs)[0]


def test_euclidean_distance():
    assert Euclidean(2).distance((0, 0), (3, 4)) == 5
    with pytest.raises(InputError):
        Euclidean(4)
    with pytest.raises(InputError):
        Euclidean(2).canon((1, 2, 3))


def test_line_exact():
    line = Line()
    assert line.distance(F(1, 3), "2") == F(5, 3)
    assert line.extension(F(1), F(0), F(1, 2)) == F(3, 2)


def test_circle_distance_and_midpoints():
    c = Circle(1.0)
    assert math.isclose(c.distance(0.0, math.pi), math.pi)
    assert math.isclose(c.distance(0.1, 2 * math.pi - 0.1), 0.2)
    assert len(c.midpoints(0.0, math.pi)) == 2
    assert len(c.midpoints(0.0, 1.0)) == 1


def test_hyperbolic_distance_matches_integral():
    h = Hyperbolic2()
    assert abs(h.distance(h.lift(0, 0), h.polar(1.0, 0.3)) - 1.0) <= TOL
    rng = random.Random(6)
    for _ in range(20):
        p = h.polar(rng.uniform(0, 4), rng.uniform(0, 2 * math.pi))
        z = math.hypot(p[1], p[2]) / (1 + p[0])
        assert abs(h.distance(h.lift(0, 0), p) - _poincare_length(z)) <= 1e-8


def test_hyperbolic_rejects_off_sheet():
    h = Hyperbolic2()
    with pytest.raises(InputError):
        h.canon((1.0, 1.0, 1.0))
    with pytest.raises(InputError):
        h.canon((-1.0, 0.0, 0.0))


def test_witness_examples():
    e = Euclidean(2)
    p = shooting_witness(e, (0.0, 0.0), (1.0, 0.0), 2.0)
    assert p == pytest.approx((-2.0, 0.0))
    assert shooting_witness(HalfPlane(), (0.0, 1.0), (0.0, 2.0), 2.0) is None
    assert shooting_witness(HalfPlane(), (0.0, 1.0), (0.0, 2.0), 1.0) == pytest.approx((0.0, 0.0))
    assert shooting_witness(Circle(1.0), 0.0, math.pi, 0.5) is None
    assert shooting_witness(Circle(1.0), 0.0, 1.0, 0.5) == pytest.approx(2 * math.pi - 0.5)
    with pytest.raises(InputError):
        shooting_witness(e, (0.0, 0.0), (0.0, 0.0), 1.0)
    with pytest.raises(InputError):
        shooting_witness(e, (0.0, 0.0), (1.0, 0.0), 0.0)


def test_halfplane_gap_positive():
    g = model_gap(HalfPlane(), (0.0, 1.0), (0.0, 2.0), 2.0)
    # farthest point of the cut disc is a chord end (+-sqrt 3, 0)
    assert g == pytest.approx(3.0 - math.sqrt(7.0))


@pytest.mark.parametrize("space", [Euclidean(2), Euclidean(3), Hyperbolic2()], ids=["E2", "E3", "H2"])
def test_witness_residuals_on_samples(space):
    rng = random.Random(7)
    worst = 0.0
    for _ in range(500):
        x, y = sample_point(space, rng), sample_point(space, rng)
        if space.distance(x, y) < 1e-6:
            continue
        r = rng.uniform(0.01, 5)
        p = shooting_witness(space, x, y, r)
        assert p is not None
        worst = max(worst, *witness_residuals(space, x, y, r, p))
    assert worst <= TOL


def test_hyperbolic_midpoint():
    h = Hyperbolic2()
    p, q = h.polar(2.0, 0.1), h.polar(3.0, 2.0)
    (m,) = h.midpoints(p, q)
    d = h.distance(p, q)
    assert abs(h.distance(p, m) - d / 2) <= TOL and abs(h.distance(q, m) - d / 2) <= TOL

from __future__ import annotations

from fractions import Fraction as F

import pytest

from ballspace.pl import PLFunction, intersect_intervals, merge_intervals, uncovered_gaps


def test_merge_touching_and_overlapping():
    assert merge_intervals([(F(2), F(3)), (F(0), F(1)), (F(1), F(2))]) == ((0, 3),)
    assert merge_intervals([(F(0), F(1)), (F(2), F(3))]) == ((0, 1), (2, 3))


def test_merge_rejects_reversed():
    with pytest.raises(ValueError):
        merge_intervals([(F(1), F(0))])


def test_intersect():
    a = ((F(0), F(2)), (F(3), F(5)))
    b = ((F(1), F(4)),)
    assert intersect_intervals(a, b) == ((1, 2), (3, 4))


def test_uncovered_gaps():
    ivs = [(F(0), F(1)), (F(2), F(2)), (F(3), F(4))]
    assert uncovered_gaps(ivs, F(0), F(5)) == [(1, 2), (2, 3), (4, 5)]
    assert uncovered_gaps([(F(-1), F(6))], F(0), F(5)) == []


def test_evaluation_and_tail():
    f = PLFunction(((F(0), F(1)), (F(2), F(3))), tail=F(-1))
    assert f(F(1)) == 2
    assert f(F(5)) == 0
    with pytest.raises(ValueError):
        f(F(-1))


def test_from_candidates_drops_collinear_knots():
    f = PLFunction.from_candidates([F(0), F(1), F(3, 2), F(2), F(3)], lambda t: min(t, 3 - t))
    assert [t for t, _ in f.knots] == [0, F(3, 2), 3]


def test_sublevel_and_level():
    f = PLFunction(((F(0), F(2)), (F(2), F(0)), (F(4), F(2))))
    assert f.sublevel(F(1)) == ((1, 3),)
    assert f.level(F(1)) == ((1, 1), (3, 3))
    flat = PLFunction(((F(0), F(0)), (F(1), F(0)), (F(2), F(1))))
    assert flat.zero_set() == ((0, 1),)


def test_sublevel_with_rising_tail():
    f = PLFunction(((F(0), F(1)),), tail=F(1))
    assert f.sublevel(F(3)) == ((0, 2),)


def test_max_on_and_arithmetic():
    f = PLFunction(((F(0), F(0)), (F(1), F(1)), (F(2), F(0))))
    g = PLFunction(((F(0), F(1)), (F(2), F(1))))
    assert f.max_on(F(0), F(2)) == (1, 1)
    h = (f - g).shift(F(1))
    assert h(F(1)) == 1 and h(F(0)) == 0


def test_combine_needs_same_domain():
    f = PLFunction(((F(0), F(0)), (F(1), F(1))))
    g = PLFunction(((F(0), F(0)), (F(2), F(1))))
    with pytest.raises(ValueError):
        f + g

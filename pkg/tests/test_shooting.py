from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from ballspace.bundled import load_bundled
from ballspace.errors import InputError
from ballspace.graph import EdgePoint, RayPoint, Vertex
from ballspace.sampling import sample_point
from ballspace.shooting import (closedness_harness, decide_point, decide_space, graph_shooting_witness,
                                holding_set, probe_depth, shooting_gap, witness)

NW_MID = EdgePoint("WN", 1)


def test_gap_examples(diamond):
    assert shooting_gap(diamond, NW_MID, Vertex("S"), 5) == 2
    assert shooting_gap(diamond, Vertex("W"), Vertex("E"), 3) == 0
    assert shooting_gap(diamond, Vertex("N"), Vertex("S"), 3) == 3


def test_gap_rejects_bad_args(diamond):
    with pytest.raises(InputError):
        shooting_gap(diamond, Vertex("N"), Vertex("N"), 1)
    with pytest.raises(InputError):
        shooting_gap(diamond, Vertex("N"), Vertex("S"), 0)


def test_witness_matches_gap(diamond):
    p = graph_shooting_witness(diamond, Vertex("W"), Vertex("E"), 3)
    assert p == RayPoint("rW", 3)
    assert graph_shooting_witness(diamond, NW_MID, Vertex("S"), 5) is None
    assert witness(diamond, Vertex("W"), Vertex("E"), 3) == p


def test_diamond_shooting_set(diamond):
    for v in ("E", "W"):
        assert decide_point(diamond, Vertex(v)).holds
    for p in (RayPoint("rE", F(1, 3)), RayPoint("rW", 5)):
        assert decide_point(diamond, p).holds
    fails = [Vertex("N"), Vertex("S")] + [EdgePoint(e, 1) for e in diamond.edges]
    for p in fails:
        v = decide_point(diamond, p)
        assert not v.holds
        assert v.gap > 0 and shooting_gap(diamond, p, v.witness_y, v.witness_r) == v.gap


def test_bent_line_fails_everywhere(bent):
    rep = decide_space(bent)
    assert holding_set(rep) == []


def test_line_graph_holds():
    g = load_bundled("line_graph")
    assert decide_point(g, Vertex("O")).holds
    assert decide_point(g, RayPoint("pos", 2)).holds


def test_square_empty_sphere(square):
    v = decide_point(square, Vertex("N"))
    assert not v.holds and v.reason == "empty sphere"
    assert v.gap == v.witness_r


def test_chain_junctions(chain):
    rep = decide_space(chain)
    assert holding_set(rep) == [Vertex("J0"), Vertex("J1"), Vertex("J2")]


def test_probe_depth(diamond):
    assert probe_depth(diamond, Vertex("N")) == 1 + 8 + 2


@pytest.mark.parametrize("name", ["diamond", "chain", "bent_line"])
def test_gap_nondecreasing_and_bounded(name):
    g = load_bundled(name)
    rng = random.Random(8)
    for _ in range(25):
        x, y = sample_point(g, rng), sample_point(g, rng)
        if g.distance(x, y) == 0:
            continue
        gaps = [shooting_gap(g, x, y, F(k, 4)) for k in range(1, 30)]
        assert all(a <= b for a, b in zip(gaps, gaps[1:]))
        assert all(0 <= gp <= F(k, 4) for k, gp in zip(range(1, 30), gaps))


@pytest.mark.parametrize("name", ["diamond", "chain"])
def test_holding_points_have_zero_gaps(name):
    g = load_bundled(name)
    rng = random.Random(9)
    holding = holding_set(decide_space(g))
    for x in holding:
        for _ in range(15):
            y = sample_point(g, rng)
            if g.distance(x, y) > 0:
                assert shooting_gap(g, x, y, F(rng.randint(1, 60), 8)) == 0


def test_closedness(diamond, chain):
    rep = closedness_harness(diamond, [RayPoint("rW", F(1, n)) for n in (1, 2, 4, 8)], Vertex("W"))
    assert not rep.counterexample
    rep = closedness_harness(chain, [RayPoint("rR", F(1, n)) for n in (1, 3, 9)], Vertex("J2"))
    assert not rep.counterexample
    with pytest.raises(InputError):
        closedness_harness(diamond, [Vertex("N")], Vertex("W"))
    with pytest.raises(InputError):
        closedness_harness(diamond, [RayPoint("rW", 1), RayPoint("rW", 2)], Vertex("W"))


def test_verdict_json(diamond):
    doc = decide_point(diamond, Vertex("N")).to_json()
    assert doc["verdict"] == "fails" and set(doc["witness"]) == {"y", "r", "gap"}
    assert decide_point(diamond, Vertex("E")).to_json() == {"point": {"vertex": "E"}, "verdict": "holds"}

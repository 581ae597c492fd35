from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from ballspace.bundled import diamond_swap, load_bundled
from ballspace.constructors import (PerturbedFamily, ProductSpace, QuotientSpace, close_group,
                                    inclusion_hausdorff, orbit_distance, perturbation_check,
                                    product_hausdorff_infty, product_shooting_witness,
                                    quotient_sigma_check, returner_check, verdict_stability)
from ballspace.errors import InputError
from ballspace.graph import EdgePoint, GraphIsometry, RayPoint, Vertex
from ballspace.hausdorff import Ball
from ballspace.models import Euclidean, Line
from ballspace.sampling import sample_point, sample_quadruples


def test_linf_formula_matches_inclusion():
    P = load_bundled("product_linf")
    for x, t, y, s in sample_quadruples(P, 50, 0):
        b1, b2 = Ball(x, t), Ball(y, s)
        assert product_hausdorff_infty(P, b1, b2) == inclusion_hausdorff(P, b1, b2)


def test_linf_membership_factorizes():
    P = load_bundled("product_linf")
    rng = random.Random(1)
    for _ in range(200):
        c, p = sample_point(P, rng), sample_point(P, rng)
        r = F(rng.randint(0, 48), 8)
        assert P.contains(c, r, p) == P.factor_contains(c, r, p)


def test_product_distance_norms():
    line = Line()
    assert ProductSpace(line, line, "linf").distance((0, 0), (3, 4)) == 4
    assert ProductSpace(line, line, "l2").distance((0, 0), (3, 4)) == 5
    with pytest.raises(InputError):
        ProductSpace(line, line, "l7")


def test_l2_proportional_witness():
    P = ProductSpace(Euclidean(1), Euclidean(2), "l2")
    w = product_shooting_witness(P, ((0.0,), (0.0, 0.0)), ((1.0,), (0.0, 3.0)), 2.0)
    assert w.ok
    eq = product_shooting_witness(P, ((0.0,), (0.0, 0.0)), ((1.0,), (0.0, 3.0)), 2.0, "equal")
    assert eq.extension_residual > 1e-3


def test_l2_equal_split_on_equal_distances():
    P = load_bundled("product_l2")
    w = product_shooting_witness(P, (F(0), F(0)), (F(2), F(-2)), 1.5, "equal")
    assert w.ok


def test_l2_graph_component_failure(diamond):
    P = ProductSpace(diamond, Line(), "l2")
    w = product_shooting_witness(P, (Vertex("N"), F(0)), (Vertex("S"), F(1)), 3.0)
    assert w.point is None and w.failed_component == "X"


def test_quotient_group_and_distance():
    Q = load_bundled("chain_mirror")
    assert len(Q.group) == 2
    assert orbit_distance(Q, Vertex("J0"), Vertex("J2")) == 0
    assert Q.distance(RayPoint("rL", 1), Vertex("J1")) == 3


def test_orbit_distance_diamond_swap(diamond):
    Q = QuotientSpace(diamond, [diamond_swap(diamond)])
    assert orbit_distance(Q, RayPoint("rW", 1), RayPoint("rE", 2)) == 1


def test_quotient_sigma_check():
    Q = load_bundled("chain_mirror")
    js = [Vertex("J0"), Vertex("J1"), Vertex("J2")]
    rng = random.Random(2)
    samples = [(rng.choice(js), F(rng.randint(0, 40), 8), rng.choice(js), F(rng.randint(0, 40), 8))
               for _ in range(30)]
    assert quotient_sigma_check(Q, samples).max_deviation == 0
    with pytest.raises(InputError):
        quotient_sigma_check(Q, [(Vertex("T1"), 1, Vertex("J1"), 1)])


def test_close_group_order():
    g = load_bundled("chain")
    swap = GraphIsometry(g, {"J0": "J2", "J2": "J0", "J1": "J1", "T1": "T2", "T2": "T1",
                             "B1": "B2", "B2": "B1"}, {"rL": "rR", "rR": "rL"})
    assert len(close_group(g, [swap, swap])) == 2


def test_returners():
    Q = load_bundled("chain_mirror")
    rep = returner_check(Q, Vertex("J1"), 1, F(1, 2))
    assert rep.transfers and rep.point_returners == 2
    rep = returner_check(Q, Vertex("J0"), 1, F(1, 2))
    assert rep.point_returners == 1


def test_family_bound_and_stability():
    Fm = load_bundled("diamond_family")
    reports = perturbation_check(Fm, sample_quadruples(Fm.base, 30, 3))
    assert [r.delta for r in reports] == [2, 1, F(1, 2), F(1, 4)]
    assert all(r.violations == 0 for r in reports)
    assert all(r.delta <= r.length_bound for r in reports)
    stab = verdict_stability(Fm)
    assert all(v == stab["limit"] for v in stab.values())


def test_family_rejects_bad_lengths(diamond):
    with pytest.raises(InputError):
        PerturbedFamily(diamond, {1: {"NE": 0}})
    with pytest.raises(InputError):
        PerturbedFamily(diamond, {1: {"XX": 1}})


def test_family_transport(diamond):
    Fm = PerturbedFamily(diamond, {1: {"WN": 4}})
    assert Fm.transport(1, EdgePoint("WN", 1)) == EdgePoint("WN", 2)

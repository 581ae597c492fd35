"""Command-line front end.

Exit codes: 0 when the computation succeeded and every checked property
holds, 1 when a property is violated (the report carries the witness),
2 on bad input or usage.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import math
import random
import sys
from fractions import Fraction

from .bundled import NAMES, bundled_path
from .constructors import (PerturbedFamily, ProductSpace, QuotientSpace, inclusion_hausdorff,
                           perturbation_check, product_hausdorff_infty, product_shooting_witness,
                           quotient_sigma_check, verdict_stability)
from .errors import InputError
from .graph import (EdgePoint, MetricGraph, RayPoint, Vertex, ball_subset, sphere_points)
from .hausdorff import Ball, hausdorff_balls, hausdorff_pl
from .io import (isometry_from_json, load_json, load_space, point_from_json, point_to_json,
                 scalar_to_json, subset_from_json, subset_to_json)
from .models import Euclidean, rotation2, translation
from .sampling import _exact, sample_point, sample_quadruples
from .shooting import decide_point, decide_space, witness
from .sigma import lift_isometry, midpoint_census, taxicab_deviation

OK, VIOLATION, USAGE = 0, 1, 2


class Output:
    """Collects the report; rendered once so output is byte-stable."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.doc: dict = {}
        self.table: tuple[list, list] | None = None

    def render(self) -> str:
        if self.fmt == "csv":
            buf = _stdio.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if self.table is not None:
                header, rows = self.table
                w.writerow(header)
                w.writerows(rows)
            else:
                w.writerow(["key", "value"])
                for k in sorted(self.doc):
                    v = self.doc[k]
                    w.writerow([k, v if isinstance(v, str) else json.dumps(v, sort_keys=True)])
            return buf.getvalue()
        return json.dumps(self.doc, indent=2, sort_keys=True) + "\n"


# argument parsing helpers -----------------------------------------------------


def open_space(ref: str):
    """A path to a space file, or ``@name`` for a bundled example."""
    if ref.startswith("@"):
        name = ref[1:]
        if name not in NAMES:
            raise InputError(f"unknown bundled space {name!r}; choose from {', '.join(NAMES)}")
        return load_space(bundled_path(name))
    return load_space(ref)


def parse_point(space, text: str):
    """JSON point, or graph shorthand: ``W`` (vertex), ``WN@1`` (edge/ray offset)."""
    g = space.base if isinstance(space, (QuotientSpace, PerturbedFamily)) else space
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
        if not isinstance(g, MetricGraph):
            return g.canon(parse_scalar(g, text))
    if isinstance(g, MetricGraph) and not isinstance(obj, dict):
        name, _, off = text.partition("@")
        if not off:
            return g.canon(Vertex(name))
        if name in g.edges:
            return g.canon(EdgePoint(name, parse_exact(off)))
        if name in g.rays:
            return g.canon(RayPoint(name, parse_exact(off)))
        raise InputError(f"unknown edge or ray {name!r}")
    return point_from_json(g, obj)


def parse_exact(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad number {text!r}") from exc


def parse_scalar(space, text: str):
    """Exact on exact spaces; ``pi`` multiples are accepted on float spaces."""
    if _exact(space) or isinstance(space, PerturbedFamily):
        return parse_exact(text)
    t = text.strip()
    if t.endswith("pi"):
        head = t[:-2].rstrip("*") or "1"
        return float(parse_exact(head)) * math.pi
    return float(parse_exact(t))


def _read_json_arg(text: str):
    """Inline JSON, or ``@path`` to a JSON file."""
    if text.startswith("@"):
        return load_json(text[1:])
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON argument at column {exc.colno}: {exc.msg}") from exc


def _need_graph(space, what: str) -> MetricGraph:
    if not isinstance(space, MetricGraph):
        raise InputError(f"{what} needs a graph space")
    return space


def _samples(space, n: int, seed: int):
    if n <= 0:
        raise InputError("--samples must be positive")
    return sample_quadruples(space, n, seed)


def _enc(x):
    return point_to_json(x)


# commands ---------------------------------------------------------------------


def cmd_dist(args, out):
    space = open_space(args.space)
    p, q = parse_point(space, args.p), parse_point(space, args.q)
    out.doc = {"p": _enc(p), "q": _enc(q), "distance": scalar_to_json(space.distance(p, q))}
    return OK


def cmd_ball(args, out):
    g = _need_graph(open_space(args.space), "ball")
    x, r = parse_point(g, args.x), parse_exact(args.r)
    out.doc = {"center": _enc(x), "radius": scalar_to_json(r), "ball": subset_to_json(ball_subset(g, x, r))}
    return OK


def cmd_sphere(args, out):
    g = _need_graph(open_space(args.space), "sphere")
    x, r = parse_point(g, args.x), parse_exact(args.r)
    pts = sphere_points(g, x, r)
    out.doc = {"center": _enc(x), "radius": scalar_to_json(r), "sphere": [_enc(p) for p in pts]}
    out.table = (["point"], [[json.dumps(_enc(p), sort_keys=True)] for p in pts])
    return OK


def cmd_hausdorff(args, out):
    space = open_space(args.space)
    if args.sets:
        g = _need_graph(space, "hausdorff --sets")
        A, B = (subset_from_json(g, _read_json_arg(s)) for s in args.sets)
        out.doc = {"hausdorff": scalar_to_json(hausdorff_pl(g, A, B))}
        return OK
    x, t, y, s = args.balls
    x, y = parse_point(space, x), parse_point(space, y)
    t, s = parse_scalar(space, t), parse_scalar(space, s)
    d = hausdorff_balls(space, Ball(x, t), Ball(y, s))
    out.doc = {"hausdorff": scalar_to_json(d), "taxicab": scalar_to_json(space.distance(x, y) + abs(t - s))}
    return OK


def cmd_shoot_point(args, out):
    g = _need_graph(open_space(args.space), "shoot point")
    v = decide_point(g, parse_point(g, args.x))
    out.doc = v.to_json()
    return OK if v.holds else VIOLATION


def cmd_shoot_space(args, out):
    g = _need_graph(open_space(args.space), "shoot space")
    probe = None
    if args.probe:
        raw = load_json(args.probe)
        if not isinstance(raw, list):
            raise InputError("probe file must hold a JSON list of points")
        probe = [point_from_json(g, p) for p in raw]
    rep = decide_space(g, probe)
    out.doc = rep.to_json()
    out.table = (["point", "verdict", "witness_y", "witness_r", "gap", "reason"],
                 [[json.dumps(_enc(v.point), sort_keys=True), v.verdict,
                   json.dumps(_enc(v.witness_y), sort_keys=True) if not v.holds else "",
                   scalar_to_json(v.witness_r) if not v.holds else "",
                   scalar_to_json(v.gap) if not v.holds else "", v.reason] for v in rep.verdicts])
    return OK if rep.holds_on_probe else VIOLATION


def cmd_shoot_witness(args, out):
    space = open_space(args.space)
    x, y = parse_point(space, args.x), parse_point(space, args.y)
    r = parse_scalar(space, args.r)
    p = witness(space, x, y, r)
    out.doc = {"x": _enc(x), "y": _enc(y), "r": scalar_to_json(r),
               "witness": None if p is None else _enc(p)}
    if p is not None:
        out.doc["residuals"] = [scalar_to_json(abs(space.distance(x, p) - r)),
                                scalar_to_json(abs(space.distance(y, p) - space.distance(y, x) - r))]
    return OK if p is not None else VIOLATION


def cmd_sigma_verify(args, out):
    space = open_space(args.space)
    rep = taxicab_deviation(space, _samples(space, args.samples, args.seed))
    w = rep.witness
    row = lambda r: [json.dumps(_enc(r.x), sort_keys=True), scalar_to_json(r.t),
                     json.dumps(_enc(r.y), sort_keys=True), scalar_to_json(r.s),
                     scalar_to_json(r.hausdorff), scalar_to_json(r.taxicab), scalar_to_json(r.deviation)]
    out.table = (["index", "x", "t", "y", "s", "hausdorff", "taxicab", "deviation"],
                 [[i, *row(r)] for i, r in enumerate(rep.rows)]
                 + [["max", "", "", "", "", "", "", scalar_to_json(rep.max_deviation)]])
    out.doc = {
        "samples": len(rep.rows),
        "max_deviation": scalar_to_json(rep.max_deviation),
        "lipschitz": rep.lipschitz_ok,
        "min_margin": scalar_to_json(rep.min_margin),
        "witness": {"index": rep.argmax, "x": _enc(w.x), "t": scalar_to_json(w.t), "y": _enc(w.y),
                    "s": scalar_to_json(w.s), "hausdorff": scalar_to_json(w.hausdorff),
                    "taxicab": scalar_to_json(w.taxicab)},
    }
    return OK if rep.taxicab_holds and rep.lipschitz_ok else VIOLATION


def cmd_sigma_midpoints(args, out):
    space = open_space(args.space)
    p, q = parse_point(space, args.p), parse_point(space, args.q)
    ms = midpoint_census(space, p, q)
    out.doc = {"p": _enc(p), "q": _enc(q), "midpoints": [_enc(m) for m in ms], "unique": len(ms) == 1}
    out.table = (["midpoint"], [[json.dumps(_enc(m), sort_keys=True)] for m in ms])
    return OK


def _motion(space, obj):
    if isinstance(space, MetricGraph):
        return isometry_from_json(space, obj)
    if isinstance(space, Euclidean) and space.dim == 2 and isinstance(obj, dict):
        if "rotation" in obj:
            return rotation2(float(obj["rotation"]), tuple(obj.get("center", (0.0, 0.0))))
        if "translation" in obj:
            return translation(tuple(float(c) for c in obj["translation"]))
    raise InputError("isometry file must be a graph isometry or a plane rotation/translation")


def cmd_lift(args, out):
    space = open_space(args.space)
    iso = _motion(space, load_json(args.iso))
    rep = lift_isometry(space, iso, _samples(space, args.samples, args.seed))
    out.doc = {"samples": rep.samples, "max_residual": scalar_to_json(rep.max_residual),
               "preserved": rep.preserved}
    return OK if rep.preserved else VIOLATION


def cmd_product_check(args, out):
    P = open_space(args.space)
    if not isinstance(P, ProductSpace):
        raise InputError("product check needs a product space")
    rng = random.Random(args.seed)
    if P.norm == "linf":
        worst = 0
        for x, t, y, s in _samples(P, args.samples, args.seed):
            b1, b2 = Ball(x, t), Ball(y, s)
            worst = max(worst, abs(product_hausdorff_infty(P, b1, b2) - inclusion_hausdorff(P, b1, b2)))
        bad_members = 0
        for _ in range(10 * args.samples):
            c, p = sample_point(P, rng), sample_point(P, rng)
            r = Fraction(rng.randint(0, 48), 8) if _exact(P) else rng.uniform(0, 6)
            bad_members += P.contains(c, r, p) != P.factor_contains(c, r, p)
        out.doc = {"norm": "linf", "formula_max_difference": scalar_to_json(worst),
                   "membership_mismatches": bad_members}
        return OK if worst == 0 and bad_members == 0 else VIOLATION
    worst = {"proportional": 0.0, "equal": 0.0}
    failures = []
    for i in range(args.samples):
        xy, ab = sample_point(P, rng), sample_point(P, rng)
        if P.distance(xy, ab) == 0:
            continue
        r = rng.uniform(0.1, 5)
        for split in worst:
            w = product_shooting_witness(P, xy, ab, r, split)
            if w.point is None:
                if split == "proportional":
                    failures.append({"index": i, "component": w.failed_component})
                continue
            worst[split] = max(worst[split], w.sphere_residual, w.extension_residual)
    out.doc = {"norm": "l2", "proportional_max_residual": scalar_to_json(worst["proportional"]),
               "equal_split_max_residual": scalar_to_json(worst["equal"]), "failures": failures}
    return OK if worst["proportional"] <= 1e-9 and not failures else VIOLATION


def cmd_quotient_check(args, out):
    Q = open_space(args.space)
    if not isinstance(Q, QuotientSpace):
        raise InputError("quotient check needs a quotient space")
    centers = [Vertex(v) for v in Q.base.vertices if decide_point(Q.base, Vertex(v)).holds]
    if not centers:
        raise InputError("no vertex of the base satisfies the shooting property")
    rng = random.Random(args.seed)
    samples = [(rng.choice(centers), Fraction(rng.randint(0, 48), 8),
                rng.choice(centers), Fraction(rng.randint(0, 48), 8)) for _ in range(args.samples)]
    rep = quotient_sigma_check(Q, samples)
    out.doc = {"group_order": len(Q.group), "centers": [_enc(c) for c in centers],
               "samples": len(samples), "max_deviation": scalar_to_json(rep.max_deviation)}
    return OK if rep.max_deviation == 0 else VIOLATION


def cmd_family_check(args, out):
    F = open_space(args.space)
    if not isinstance(F, PerturbedFamily):
        raise InputError("family check needs a family space")
    reports = perturbation_check(F, _samples(F.base, args.samples, args.seed))
    stab = verdict_stability(F)
    stable = all(v == stab["limit"] for v in stab.values())
    out.doc = {
        "steps": [{"n": r.n, "delta": scalar_to_json(r.delta), "length_bound": scalar_to_json(r.length_bound),
                   "max_difference": scalar_to_json(r.max_difference), "violations": r.violations}
                  for r in reports],
        "verdicts_stable": stable,
    }
    out.table = (["n", "delta", "length_bound", "max_difference", "violations"],
                 [[r.n, scalar_to_json(r.delta), scalar_to_json(r.length_bound),
                   scalar_to_json(r.max_difference), r.violations] for r in reports])
    ok = stable and all(r.violations == 0 for r in reports)
    return OK if ok else VIOLATION


def cmd_oracle_compare(args, out):
    from .oracle import compare

    g = _need_graph(open_space(args.space), "oracle compare")
    eps = parse_exact(args.eps) if args.eps else Fraction(1, 8)
    depth = parse_exact(args.depth) if args.depth else None
    rows = compare(g, eps, depth, n=args.samples, seed=args.seed)
    out.table = (["operation", "input_digest", "exact", "oracle", "bound", "pass"],
                 [[r.operation, r.digest, scalar_to_json(r.exact), scalar_to_json(r.oracle),
                   scalar_to_json(r.bound), "pass" if r.ok else "fail"] for r in rows])
    out.doc = {"eps": scalar_to_json(eps), "rows": len(rows), "failures": sum(not r.ok for r in rows)}
    return OK if all(r.ok for r in rows) else VIOLATION


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--eps", default=argparse.SUPPRESS, help="oracle resolution, e.g. 1/16")
    common.add_argument("--depth", default=argparse.SUPPRESS, help="oracle ray truncation depth")

    parser = argparse.ArgumentParser(prog="ballspace", parents=[common],
                                     description="Metric geometry of closed balls under the Hausdorff distance.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, helptext, parent=sub):
        p = parent.add_parser(name, parents=[common], help=helptext)
        p.add_argument("space", help="space file, or @name for a bundled example")
        p.set_defaults(func=func)
        return p

    p = add("dist", cmd_dist, "distance between two points")
    p.add_argument("p")
    p.add_argument("q")
    for name, func in (("ball", cmd_ball), ("sphere", cmd_sphere)):
        p = add(name, func, f"closed {name} on a graph")
        p.add_argument("x")
        p.add_argument("r")
    p = add("hausdorff", cmd_hausdorff, "Hausdorff distance of PL sets or balls")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--sets", nargs=2, metavar=("A", "B"), help="subset JSON or @file")
    grp.add_argument("--balls", nargs=4, metavar=("X", "T", "Y", "S"))

    shoot = sub.add_parser("shoot", help="shooting property").add_subparsers(dest="mode", required=True)
    p = add("point", cmd_shoot_point, "exact verdict at one point", shoot)
    p.add_argument("x")
    p = add("space", cmd_shoot_space, "verdicts over a probe set", shoot)
    p.add_argument("--probe", help="JSON list of points (default: vertices and edge midpoints)")
    p = add("witness", cmd_shoot_witness, "geodesic extension witness for (x, y, r)", shoot)
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("r")

    sigma = sub.add_parser("sigma", help="hyperspace of balls").add_subparsers(dest="mode", required=True)
    p = add("verify", cmd_sigma_verify, "taxicab deviation on seeded samples", sigma)
    p.add_argument("--samples", type=int, default=100)
    p = add("midpoints", cmd_sigma_midpoints, "midpoint census of two points", sigma)
    p.add_argument("p")
    p.add_argument("q")

    p = add("lift", cmd_lift, "lift a point isometry to balls")
    p.add_argument("--iso", required=True, help="isometry JSON file")
    p.add_argument("--samples", type=int, default=50)

    for name, func in (("product", cmd_product_check), ("quotient", cmd_quotient_check),
                       ("family", cmd_family_check)):
        grp = sub.add_parser(name, help=f"{name} constructor checks").add_subparsers(dest="mode", required=True)
        p = add("check", func, f"verify the {name} results on samples", grp)
        p.add_argument("--samples", type=int, default=50)

    grp = sub.add_parser("oracle", help="epsilon-net oracle").add_subparsers(dest="mode", required=True)
    p = add("compare", cmd_oracle_compare, "exact engine against the oracle", grp)
    p.add_argument("--samples", type=int, default=30)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    for name, default in (("format", "json"), ("seed", 0), ("eps", None), ("depth", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    out = Output(args.format)
    try:
        code = args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    sys.stdout.write(out.render())
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Closed-form model spaces: line, Euclidean space, hyperbolic plane,
circle and the closed upper half-plane.

Points are plain numbers (line, circle angle) or float tuples. Every
space exposes the same small interface used by the rest of the package:
``canon``, ``distance``, ``farthest``, ``ball_hausdorff``,
``extension`` (candidate geodesic extension) and ``midpoints``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .hausdorff import hausdorff_intervals

TOL = 1e-9
HYPERBOLOID_TOL = 1e-12


def _real(x, what="coordinate") -> float:
    if isinstance(x, bool):
        raise InputError(f"boolean {what}")
    try:
        v = float(Fraction(x)) if isinstance(x, str) else float(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad {what} {x!r}") from exc
    if not math.isfinite(v):
        raise InputError(f"non-finite {what} {x!r}")
    return v


def _vec(p, dim: int) -> tuple[float, ...]:
    try:
        coords = tuple(p)
    except TypeError as exc:
        raise InputError(f"expected {dim} coordinates, got {p!r}") from exc
    if len(coords) != dim:
        raise InputError(f"expected {dim} coordinates, got {len(coords)}")
    return tuple(_real(c) for c in coords)


def farthest_form(space, x, t, y, s) -> float:
    """Hausdorff distance of two balls via farthest distances.

    In a length space ``B_t(x)`` lies in the ``r``-neighbourhood of
    ``B_s(y)`` iff ``max_{p in B_t(x)} d(p, y) <= s + r``.
    """
    return max(0.0, space.farthest(x, t, y) - s, space.farthest(y, s, x) - t)


@dataclass(frozen=True)
class Line:
    """The real line. Exact when fed Fractions or ints."""

    kind = "line"

    def canon(self, p):
        if isinstance(p, bool):
            raise InputError("boolean point")
        if isinstance(p, (int, Fraction)):
            return Fraction(p)
        if isinstance(p, str):
            try:
                return Fraction(p)
            except ValueError as exc:
                raise InputError(f"bad point {p!r}") from exc
        return _real(p, "point")

    def distance(self, p, q):
        return abs(self.canon(p) - self.canon(q))

    def farthest(self, x, t, y):
        return self.distance(x, y) + t

    def ball_hausdorff(self, x, t, y, s):
        x, y = self.canon(x), self.canon(y)
        return hausdorff_intervals((x - t, x + t), (y - s, y + s))

    def extension(self, x, y, r):
        x, y = self.canon(x), self.canon(y)
        return x + r if x > y else x - r

    def midpoints(self, p, q):
        return [(self.canon(p) + self.canon(q)) / 2]


@dataclass(frozen=True)
class Euclidean:
    dim: int = 2
    kind = "euclidean"

    def __post_init__(self):
        if not isinstance(self.dim, int) or not 1 <= self.dim <= 3:
            raise InputError(f"Euclidean dimension must be 1, 2 or 3, got {self.dim!r}")

    def canon(self, p):
        return _vec(p, self.dim)

    def distance(self, p, q):
        return math.dist(self.canon(p), self.canon(q))

    def farthest(self, x, t, y):
        return self.distance(x, y) + t

    def ball_hausdorff(self, x, t, y, s):
        return self.distance(x, y) + abs(t - s)

    def extension(self, x, y, r):
        x, y = self.canon(x), self.canon(y)
        d = math.dist(x, y)
        return tuple(a + r * (a - b) / d for a, b in zip(x, y))

    def midpoints(self, p, q):
        p, q = self.canon(p), self.canon(q)
        return [tuple((a + b) / 2 for a, b in zip(p, q))]


def _mink(a, b) -> float:
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass(frozen=True)
class Hyperbolic2:
    """Hyperbolic plane of curvature -1 in hyperboloid coordinates
    ``(x0, x1, x2)`` with ``-x0^2 + x1^2 + x2^2 = -1`` and ``x0 > 0``."""

    kind = "hyperbolic2"

    @staticmethod
    def lift(u: float, v: float) -> tuple[float, float, float]:
        return (math.sqrt(1.0 + u * u + v * v), float(u), float(v))

    @staticmethod
    def polar(rho: float, theta: float) -> tuple[float, float, float]:
        """Point at distance ``rho`` from the origin in direction ``theta``."""
        return (math.cosh(rho), math.sinh(rho) * math.cos(theta), math.sinh(rho) * math.sin(theta))

    def canon(self, p):
        p = _vec(p, 3)
        if p[0] <= 0:
            raise InputError(f"point {p} is on the lower sheet")
        if abs(_mink(p, p) + 1.0) > HYPERBOLOID_TOL * max(1.0, p[0] * p[0]):
            raise InputError(f"point {p} is off the hyperboloid")
        return p

    def distance(self, p, q):
        p, q = self.canon(p), self.canon(q)
        # Poincare-disc chord: no cancellation between large coordinates
        du = p[1] / (1 + p[0]) - q[1] / (1 + q[0])
        dv = p[2] / (1 + p[0]) - q[2] / (1 + q[0])
        return 2.0 * math.asinh(math.hypot(du, dv) * math.sqrt((1 + p[0]) * (1 + q[0])) / 2.0)

    def farthest(self, x, t, y):
        return self.distance(x, y) + t

    def ball_hausdorff(self, x, t, y, s):
        return self.distance(x, y) + abs(t - s)

    def extension(self, x, y, r):
        x, y = self.canon(x), self.canon(y)
        # unit tangent at x pointing away from y: project y onto T_x, flip
        w = tuple(b + _mink(x, y) * a for a, b in zip(x, y))
        w = tuple(b + _mink(w, x) * a for a, b in zip(x, w))
        n = math.sqrt(_mink(w, w))
        v = tuple(-b / n for b in w)
        p = tuple(math.cosh(r) * a + math.sinh(r) * w for a, w in zip(x, v))
        return self.lift(p[1], p[2])

    def midpoints(self, p, q):
        p, q = self.canon(p), self.canon(q)
        # |p + q|_M = 2 cosh(d/2); lift rebuilds x0 without cancellation
        n = 2.0 * math.cosh(self.distance(p, q) / 2.0)
        return [self.lift((p[1] + q[1]) / n, (p[2] + q[2]) / n)]


@dataclass(frozen=True)
class Circle:
    """Circle of the given radius with the arc-length metric; points are angles."""

    radius: float = 1.0
    kind = "circle"

    def __post_init__(self):
        if not _real(self.radius, "radius") > 0:
            raise InputError(f"circle radius must be positive, got {self.radius!r}")

    @property
    def half(self) -> float:
        return math.pi * self.radius

    def canon(self, p):
        return math.fmod(_real(p, "angle"), 2 * math.pi) % (2 * math.pi)

    def distance(self, p, q):
        delta = abs(self.canon(p) - self.canon(q))
        return self.radius * min(delta, 2 * math.pi - delta)

    def farthest(self, x, t, y):
        return min(self.distance(x, y) + t, self.half)

    def ball_hausdorff(self, x, t, y, s):
        return farthest_form(self, x, t, y, s)

    def extension(self, x, y, r):
        x, y = self.canon(x), self.canon(y)
        ahead = (y - x) % (2 * math.pi)
        step = r / self.radius
        return self.canon(x - step if ahead <= math.pi else x + step)

    def midpoints(self, p, q):
        p, q = self.canon(p), self.canon(q)
        ahead = (q - p) % (2 * math.pi)
        m = self.canon(p + ahead / 2)
        if abs(ahead - math.pi) <= TOL:
            return sorted([m, self.canon(m + math.pi)])
        if ahead > math.pi:
            m = self.canon(m + math.pi)
        return [m]


@dataclass(frozen=True)
class HalfPlane:
    """Closed upper half-plane ``v >= 0`` with the Euclidean metric."""

    kind = "halfplane"

    def canon(self, p):
        p = _vec(p, 2)
        if p[1] < 0:
            raise InputError(f"point {p} has v < 0")
        return p

    def distance(self, p, q):
        return math.dist(self.canon(p), self.canon(q))

    def farthest(self, x, t, y):
        """Farthest distance from ``y`` over the half-disc ``B_t(x)``.

        The unconstrained maximiser is ``x + t (x - y)/|x - y|``; if it leaves
        the half-plane the maximum sits on the chord ``v = 0`` of the disc.
        """
        x, y = self.canon(x), self.canon(y)
        d = math.dist(x, y)
        if d == 0:
            return float(t)
        far = x[1] + t * (x[1] - y[1]) / d
        if far >= 0:
            return d + t
        half_chord = math.sqrt(max(0.0, t * t - x[1] * x[1]))
        return max(math.dist(y, (x[0] + sgn * half_chord, 0.0)) for sgn in (-1, 1))

    def ball_hausdorff(self, x, t, y, s):
        return farthest_form(self, x, t, y, s)

    def extension(self, x, y, r):
        x, y = self.canon(x), self.canon(y)
        d = math.dist(x, y)
        return tuple(a + r * (a - b) / d for a, b in zip(x, y))

    def midpoints(self, p, q):
        p, q = self.canon(p), self.canon(q)
        return [tuple((a + b) / 2 for a, b in zip(p, q))]


MODEL_KINDS = {"line": Line, "euclidean": Euclidean, "hyperbolic2": Hyperbolic2,
               "circle": Circle, "halfplane": HalfPlane}


def model_distance(m, p, q):
    return m.distance(p, q)


def witness_residuals(m, x, y, r, p) -> tuple[float, float]:
    """``(|d(x,p) - r|, |d(y,p) - d(y,x) - r|)`` as floats."""
    d = m.distance(x, y)
    return float(abs(m.distance(x, p) - r)), float(abs(m.distance(y, p) - d - r))


def _in_space(m, p) -> bool:
    try:
        m.canon(p)
    except InputError:
        return False
    return True


def shooting_witness(m, x, y, r):
    """Point ``p`` on the extension of ``[y, x]`` past ``x`` by ``r``, or None.

    The extension is unique in these spaces; it is returned only if it lies
    in the space and realises ``d(y, p) = d(y, x) + r`` within ``TOL``.
    """
    x, y = m.canon(x), m.canon(y)
    if not r > 0:
        raise InputError(f"radius must be positive, got {r}")
    if m.distance(x, y) == 0:
        raise InputError("y must differ from x")
    if isinstance(m, Circle) and m.distance(x, y) + r > m.half + TOL:
        return None
    p = m.extension(x, y, r)
    if not _in_space(m, p):
        return None
    res = witness_residuals(m, x, y, r, p)
    if max(res) > TOL:
        return None
    return p


def model_gap(m, x, y, r) -> float:
    """``d(y, x) + r - max_{p in B_r(x)} d(y, p)`` from the closed forms."""
    if not r > 0:
        raise InputError(f"radius must be positive, got {r}")
    if m.distance(x, y) == 0:
        raise InputError("y must differ from x")
    return m.distance(x, y) + r - m.farthest(x, r, y)


def rotation2(angle: float, center=(0.0, 0.0)):
    """Rotation of the Euclidean plane, as a point map."""
    c, s = math.cos(angle), math.sin(angle)
    cx, cy = center

    def rot(p):
        u, v = p[0] - cx, p[1] - cy
        return (cx + c * u - s * v, cy + s * u + c * v)

    return rot


def translation(offset):
    def shift(p):
        return tuple(a + b for a, b in zip(p, offset))

    return shift

"""Exact piecewise-linear functions of one variable over Fractions.

A :class:`PLFunction` is given by knots ``(t, value)`` with strictly
increasing ``t``; it is linear between consecutive knots. An optional
``tail`` slope extends it linearly past the last knot, which is how
distance along an infinite ray is represented.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Interval = tuple[Fraction, Fraction]


def merge_intervals(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    """Sort closed intervals and merge overlapping or touching ones."""
    out: list[list[Fraction]] = []
    for lo, hi in sorted(intervals):
        if lo > hi:
            raise ValueError(f"degenerate interval [{lo}, {hi}]")
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


def intersect_intervals(a: Sequence[Interval], b: Sequence[Interval]) -> tuple[Interval, ...]:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return merge_intervals(out)


def interval_contains(intervals: Sequence[Interval], t: Fraction) -> bool:
    return any(lo <= t <= hi for lo, hi in intervals)


def intervals_cover(intervals: Sequence[Interval], lo: Fraction, hi: Fraction) -> bool:
    return any(a <= lo and hi <= b for a, b in merge_intervals(intervals))


def uncovered_gaps(intervals: Sequence[Interval], lo: Fraction, hi: Fraction) -> list[Interval]:
    """Pieces of ``[lo, hi]`` not covered by the closed ``intervals``.

    Each returned ``(a, b)`` has ``a < b``; the open interval ``(a, b)`` is
    uncovered, so its midpoint is a safe witness.
    """
    gaps = []
    cursor = lo
    for a, b in merge_intervals(intervals):
        if b < cursor:
            continue
        if a > hi:
            break
        if a > cursor:
            gaps.append((cursor, a))
        cursor = max(cursor, b)
    if cursor < hi:
        gaps.append((cursor, hi))
    return gaps


@dataclass(frozen=True)
class PLFunction:
    knots: tuple[tuple[Fraction, Fraction], ...]
    tail: Fraction | None = None

    def __post_init__(self):
        if not self.knots:
            raise ValueError("PLFunction needs at least one knot")
        ts = [t for t, _ in self.knots]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("knots must be strictly increasing")

    @classmethod
    def from_candidates(
        cls,
        candidates: Iterable[Fraction],
        f: Callable[[Fraction], Fraction],
        tail: Fraction | None = None,
    ) -> PLFunction:
        """Sample ``f`` at the candidate breakpoints and drop collinear knots.

        The caller guarantees that ``f`` is linear between consecutive
        candidates (and past the last one, with slope ``tail``).
        """
        ts = sorted(set(candidates))
        knots = [(t, f(t)) for t in ts]
        return cls(tuple(_simplify(knots)), tail)

    @property
    def lo(self) -> Fraction:
        return self.knots[0][0]

    @property
    def last(self) -> Fraction:
        return self.knots[-1][0]

    def __call__(self, t: Fraction) -> Fraction:
        knots = self.knots
        if t < knots[0][0]:
            raise ValueError(f"{t} below domain start {knots[0][0]}")
        if t >= knots[-1][0]:
            t_last, v_last = knots[-1]
            if t == t_last:
                return v_last
            if self.tail is None:
                raise ValueError(f"{t} beyond domain end {t_last}")
            return v_last + self.tail * (t - t_last)
        lo, hi = 0, len(knots) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if knots[mid][0] <= t:
                lo = mid
            else:
                hi = mid
        (t0, v0), (t1, v1) = knots[lo], knots[hi]
        if t == t0:
            return v0
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def truncate(self, hi: Fraction) -> PLFunction:
        """Restrict the domain to ``[lo, hi]``."""
        kept = [(t, v) for t, v in self.knots if t < hi]
        kept.append((hi, self(hi)))
        return PLFunction(tuple(kept), None)

    def breakpoints_in(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        return [t for t, _ in self.knots if lo < t < hi]

    def max_on(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Return ``(argmax, max)`` over the closed interval ``[lo, hi]``."""
        best_t, best_v = lo, self(lo)
        for t in self.breakpoints_in(lo, hi) + [hi]:
            v = self(t)
            if v > best_v:
                best_t, best_v = t, v
        return best_t, best_v

    def sublevel(self, c: Fraction) -> tuple[Interval, ...]:
        """Closed set ``{t : f(t) <= c}`` as merged intervals.

        With a tail, the tail slope must be positive so the set is bounded.
        """
        knots = list(self.knots)
        if self.tail is not None:
            t_last, v_last = knots[-1]
            if self.tail <= 0:
                if v_last <= c:
                    raise ValueError("unbounded sublevel set")
            elif v_last < c:
                knots.append((t_last + (c - v_last) / self.tail, c))
        out: list[Interval] = []
        for t, v in knots:
            if v <= c:
                out.append((t, t))
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            if v0 <= c and v1 <= c:
                out.append((t0, t1))
            elif v0 <= c < v1:
                out.append((t0, t0 + (c - v0) * (t1 - t0) / (v1 - v0)))
            elif v1 <= c < v0:
                out.append((t1 - (c - v1) * (t1 - t0) / (v0 - v1), t1))
        return merge_intervals(out)

    def level(self, c: Fraction, end: Fraction | None = None) -> tuple[Interval, ...]:
        """Closed set ``{t : f(t) == c}``; isolated solutions are ``(t, t)``.

        ``end`` bounds the search on a function with a tail.
        """
        knots = list(self.knots)
        if self.tail is not None:
            t_last, v_last = knots[-1]
            if self.tail != 0:
                reach = t_last + (c - v_last) / self.tail
                if reach > t_last and (end is None or reach <= end):
                    knots.append((reach, c))
            elif end is not None and end > t_last:
                knots.append((end, v_last))
        out: list[Interval] = []
        for t, v in knots:
            if v == c:
                out.append((t, t))
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            if v0 == c and v1 == c:
                out.append((t0, t1))
            elif (v0 - c) * (v1 - c) < 0:
                t = t0 + (c - v0) * (t1 - t0) / (v1 - v0)
                out.append((t, t))
        if end is not None:
            out = [(lo, min(hi, end)) for lo, hi in out if lo <= end]
        return merge_intervals(out)

    def zero_set(self) -> tuple[Interval, ...]:
        return self.level(Fraction(0))

    def combine(self, other: PLFunction, op: Callable[[Fraction, Fraction], Fraction]) -> PLFunction:
        """Pointwise ``op`` of two truncated functions on a common domain.

        Only valid for ``op`` that is affine in each argument (sum,
        difference, scaling); min/max need crossing points and are not
        handled here.
        """
        if self.tail is not None or other.tail is not None:
            raise ValueError("truncate before combining")
        if self.lo != other.lo or self.last != other.last:
            raise ValueError("domains differ")
        ts = {t for t, _ in self.knots} | {t for t, _ in other.knots}
        return PLFunction.from_candidates(ts, lambda t: op(self(t), other(t)))

    def __add__(self, other: PLFunction) -> PLFunction:
        return self.combine(other, lambda a, b: a + b)

    def __sub__(self, other: PLFunction) -> PLFunction:
        return self.combine(other, lambda a, b: a - b)

    def shift(self, c: Fraction) -> PLFunction:
        return PLFunction(tuple((t, v + c) for t, v in self.knots), self.tail)


def _simplify(knots: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    if len(knots) <= 2:
        return knots
    out = [knots[0]]
    for i in range(1, len(knots) - 1):
        (t0, v0), (t1, v1), (t2, v2) = out[-1], knots[i], knots[i + 1]
        if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
            out.append(knots[i])
    out.append(knots[-1])
    return out

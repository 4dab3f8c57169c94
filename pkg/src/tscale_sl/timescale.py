"""Bounded time scales: jump operators, graininess and finite realization.

A time scale is stored as an ordered list of disjoint closed segments, each
either a nondegenerate interval or a single point. Everything downstream
works on a :class:`Grid`, which samples the dense segments and keeps every
scattered gap verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "TimeScaleError",
    "DegenerateTimeScaleError",
    "Segment",
    "TimeScale",
    "PointClass",
    "Grid",
    "build_timescale",
    "sigma",
    "rho",
    "mu",
    "classify",
    "realize",
    "grid_from_points",
]


class TimeScaleError(ValueError):
    """Invalid time scale input or query point."""


class DegenerateTimeScaleError(TimeScaleError):
    """The realized grid has fewer than three points, so a = rho(b)."""


class SegmentKind(str, Enum):
    INTERVAL = "interval"
    POINT = "point"


@dataclass(frozen=True)
class Segment:
    kind: SegmentKind
    start: float
    end: float

    def __post_init__(self):
        kind = SegmentKind(self.kind)
        object.__setattr__(self, "kind", kind)
        start, end = float(self.start), float(self.end)
        if not (math.isfinite(start) and math.isfinite(end)):
            raise TimeScaleError(f"segment endpoints must be finite, got [{start}, {end}]")
        if start > end:
            raise TimeScaleError(f"segment has from > to: [{start}, {end}]")
        if kind is SegmentKind.POINT and start != end:
            raise TimeScaleError("a point segment must have from == to")
        if kind is SegmentKind.INTERVAL and not start < end:
            raise TimeScaleError(f"an interval segment needs from < to, got [{start}, {end}]")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)

    @classmethod
    def point(cls, at: float) -> "Segment":
        return cls(SegmentKind.POINT, at, at)

    @classmethod
    def interval(cls, start: float, end: float) -> "Segment":
        return cls(SegmentKind.INTERVAL, start, end)

    @property
    def is_point(self) -> bool:
        return self.kind is SegmentKind.POINT


@dataclass(frozen=True)
class TimeScale:
    """Ordered disjoint union of closed intervals and points.

    Use :func:`build_timescale` rather than the constructor; it sorts and
    merges the input.
    """

    segments: tuple[Segment, ...]
    a: float
    b: float

    @property
    def tolerance(self) -> float:
        return 1e-12 * max(1.0, abs(self.a), abs(self.b))

    @property
    def is_isolated(self) -> bool:
        """True when every member is a scattered point (no dense segment)."""
        return all(s.is_point for s in self.segments)

    def locate(self, t: float) -> int:
        """Index of the segment containing ``t``; raises if ``t`` is not a member."""
        tol = self.tolerance
        for k, seg in enumerate(self.segments):
            if seg.start - tol <= t <= seg.end + tol:
                return k
        raise TimeScaleError(f"{t!r} is not a member of the time scale")

    def __contains__(self, t: float) -> bool:
        try:
            self.locate(t)
        except TimeScaleError:
            return False
        return True


def build_timescale(segments: Iterable[Segment]) -> TimeScale:
    """Sort segments and merge any that overlap or touch."""
    segs = sorted(segments, key=lambda s: (s.start, s.end))
    if not segs:
        raise TimeScaleError("a time scale needs at least one segment")
    tol = 1e-12 * max(1.0, max(abs(s.start) for s in segs), max(abs(s.end) for s in segs))

    merged: list[list[float]] = []
    for seg in segs:
        if merged and seg.start <= merged[-1][1] + tol:
            merged[-1][1] = max(merged[-1][1], seg.end)
        else:
            merged.append([seg.start, seg.end])

    out = tuple(
        Segment.point(lo) if hi - lo <= tol else Segment.interval(lo, hi)
        for lo, hi in merged
    )
    return TimeScale(out, out[0].start, out[-1].end)


def _right_end(ts: TimeScale, t: float, k: int) -> bool:
    return abs(t - ts.segments[k].end) <= ts.tolerance


def _left_end(ts: TimeScale, t: float, k: int) -> bool:
    return abs(t - ts.segments[k].start) <= ts.tolerance


def sigma(ts: TimeScale, t: float) -> float:
    """Forward jump: the least member strictly above ``t`` (``b`` maps to itself)."""
    k = ts.locate(t)
    if not _right_end(ts, t, k):
        return float(t)
    if k + 1 < len(ts.segments):
        return ts.segments[k + 1].start
    return ts.b


def rho(ts: TimeScale, t: float) -> float:
    """Backward jump: the greatest member strictly below ``t`` (``a`` maps to itself)."""
    k = ts.locate(t)
    if not _left_end(ts, t, k):
        return float(t)
    if k > 0:
        return ts.segments[k - 1].end
    return ts.a


def mu(ts: TimeScale, t: float) -> float:
    """Graininess sigma(t) - t."""
    s = sigma(ts, t)
    return s - t if s != t else 0.0


@dataclass(frozen=True)
class PointClass:
    left_dense: bool
    right_dense: bool

    @property
    def left_scattered(self) -> bool:
        return not self.left_dense

    @property
    def right_scattered(self) -> bool:
        return not self.right_dense

    @property
    def isolated(self) -> bool:
        return self.left_scattered and self.right_scattered

    def __str__(self):
        if self.isolated:
            return "isolated"
        left = "left-dense" if self.left_dense else "left-scattered"
        right = "right-dense" if self.right_dense else "right-scattered"
        return f"{left}, {right}"


def classify(ts: TimeScale, t: float) -> PointClass:
    """Classify ``t`` as left/right dense or scattered.

    The extreme points follow the jump conventions: ``rho(a) = a`` makes
    ``a`` left-dense and ``sigma(b) = b`` makes ``b`` right-dense.
    """
    return PointClass(left_dense=rho(ts, t) == t, right_dense=sigma(ts, t) == t)


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.asarray(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Grid:
    """Finite realization of a time scale.

    Attributes
    ----------
    points : ndarray, shape (N+1,)
        Strictly increasing t_0 = a, ..., t_N = b.
    graininess : ndarray, shape (N,)
        mu_i = t_{i+1} - t_i.
    original : ndarray of bool, shape (N+1,)
        True for segment endpoints and isolated points of the time scale,
        False for points sampled inside a dense segment.
    segment : ndarray of int, shape (N+1,)
        Index of the time-scale segment each point belongs to.
    step : float
        Dense-segment sampling step h.
    """

    points: np.ndarray
    graininess: np.ndarray
    original: np.ndarray
    segment: np.ndarray
    step: float
    timescale: TimeScale = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.points) - 1

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def a(self) -> float:
        return float(self.points[0])

    @property
    def b(self) -> float:
        return float(self.points[-1])

    @property
    def rho_b(self) -> float:
        return float(self.points[-2])


def realize(ts: TimeScale, h: float) -> Grid:
    """Sample ``ts`` into a :class:`Grid`.

    Each dense segment [l, r] is split into ceil((r - l)/h) equal parts, so
    the segment endpoints stay exact; isolated points are copied as is.
    """
    h = float(h)
    if not (h > 0 and math.isfinite(h)):
        raise TimeScaleError(f"step must be positive and finite, got {h}")

    points: list[float] = []
    original: list[bool] = []
    owner: list[int] = []
    for k, seg in enumerate(ts.segments):
        if seg.is_point:
            points.append(seg.start)
            original.append(True)
            owner.append(k)
            continue
        length = seg.end - seg.start
        # shave a relative ulp-level excess so that exact multiples of h do not gain a part
        n = max(1, math.ceil(length / h * (1 - 1e-12)))
        for j in range(n + 1):
            if j == n:
                t = seg.end
            else:
                t = seg.start + length * j / n
            points.append(t)
            original.append(j == 0 or j == n)
            owner.append(k)

    if len(points) < 3:
        raise DegenerateTimeScaleError("degenerate time scale: a = rho(b)")
    pts = np.asarray(points, dtype=float)
    return Grid(
        points=_frozen(pts),
        graininess=_frozen(np.diff(pts)),
        original=_frozen(original, dtype=bool),
        segment=_frozen(owner, dtype=int),
        step=h,
        timescale=ts,
    )


def grid_from_points(points: Sequence[float]) -> Grid:
    """Convenience: the exact grid of the isolated time scale ``{points}``."""
    ts = build_timescale(Segment.point(p) for p in points)
    return realize(ts, 1.0)

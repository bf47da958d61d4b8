"""Plane primitives: points, segments, polygonal curves and the predicates on them."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .errors import DegenerateCurve

TAU_ON = 1e-9


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def dist(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


class Orientation(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1

    def flip(self) -> Orientation:
        return Orientation.NEGATIVE if self is Orientation.POSITIVE else Orientation.POSITIVE


class Location(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    ON_BOUNDARY = "on_boundary"


@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2

    @property
    def length(self) -> float:
        return self.a.dist(self.b)


class IntersectionKind(enum.Enum):
    DISJOINT = "disjoint"
    POINT = "point"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class Intersection:
    kind: IntersectionKind
    point: Optional[Point2] = None


def _as_array(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = np.array(points, dtype=float)
    else:
        arr = np.array([tuple(p) for p in points], dtype=float)
    return arr.reshape(-1, 2)


class PolyCurve:
    """Ordered polygonal curve; closed curves store each vertex once."""

    __slots__ = ("_v", "closed", "_params")

    def __init__(self, vertices, closed: bool = False):
        v = _as_array(vertices)
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite vertex")
        if closed and len(v) > 1 and np.array_equal(v[0], v[-1]):
            v = v[:-1]
        if len(v) < (3 if closed else 2):
            raise DegenerateCurve(f"too few vertices ({len(v)}) for a {'closed' if closed else 'open'} curve")
        if np.any(np.all(v[1:] == v[:-1], axis=1)):
            raise DegenerateCurve("consecutive vertices coincide")
        v.setflags(write=False)
        self._v = v
        self.closed = bool(closed)
        self._params = None

    @classmethod
    def dedup(cls, vertices, closed: bool = False) -> PolyCurve:
        """Build a curve after dropping consecutive repeated vertices."""
        v = _as_array(vertices)
        keep = np.ones(len(v), dtype=bool)
        keep[1:] = np.any(v[1:] != v[:-1], axis=1)
        v = v[keep]
        if closed:
            while len(v) > 1 and np.array_equal(v[0], v[-1]):
                v = v[:-1]
        return cls(v, closed=closed)

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    def __len__(self) -> int:
        return len(self._v)

    def __repr__(self) -> str:
        return f"PolyCurve(n={len(self._v)}, closed={self.closed})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyCurve) and self.closed == other.closed and np.array_equal(self._v, other._v)

    def points(self) -> list[Point2]:
        return [Point2(float(x), float(y)) for x, y in self._v]

    def ring(self) -> np.ndarray:
        """Vertex array with the first vertex repeated at the end when closed."""
        return np.vstack([self._v, self._v[:1]]) if self.closed else self._v

    def segments(self) -> list[Segment]:
        r = self.ring()
        return [Segment(Point2(*r[i]), Point2(*r[i + 1])) for i in range(len(r) - 1)]

    def edge_lengths(self) -> np.ndarray:
        return np.hypot(*np.diff(self.ring(), axis=0).T)

    @property
    def length(self) -> float:
        return float(self.edge_lengths().sum())

    def vertex_params(self) -> np.ndarray:
        """Normalised arclength parameter of each ring vertex, from 0 to 1."""
        if self._params is None:
            cum = np.concatenate([[0.0], np.cumsum(self.edge_lengths())])
            self._params = cum / cum[-1]
        return self._params

    def at(self, t) -> np.ndarray:
        """Points at normalised arclength parameters ``t`` in [0, 1]."""
        t = np.asarray(t, dtype=float)
        s = self.vertex_params()
        r = self.ring()
        return np.stack([np.interp(t, s, r[:, 0]), np.interp(t, s, r[:, 1])], axis=-1)

    def reversed(self) -> PolyCurve:
        if self.closed:
            return PolyCurve(np.vstack([self._v[:1], self._v[:0:-1]]), closed=True)
        return PolyCurve(self._v[::-1], closed=False)

    def rotated(self, k: int) -> PolyCurve:
        """Cyclic re-indexing of a closed curve so vertex ``k`` comes first."""
        if not self.closed:
            raise ValueError("only closed curves can be re-indexed")
        return PolyCurve(np.roll(self._v, -k, axis=0), closed=True)

    def subdivided(self, pieces: int) -> PolyCurve:
        """Insert ``pieces - 1`` collinear points into every edge."""
        if pieces < 1:
            raise ValueError("pieces must be >= 1")
        r = self.ring()
        out = []
        for i in range(len(r) - 1):
            f = np.arange(pieces)[:, None] / pieces
            out.append(r[i] + f * (r[i + 1] - r[i]))
        if not self.closed:
            out.append(r[-1:])
        return PolyCurve(np.vstack(out), closed=self.closed)

    def transformed(self, fn) -> PolyCurve:
        """Image of the vertex list under a vectorised map."""
        return PolyCurve.dedup(fn(self._v), closed=self.closed)

    def bbox(self) -> tuple[float, float, float, float]:
        lo = self._v.min(axis=0)
        hi = self._v.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def diameter(self) -> float:
        v = self._v
        if len(v) > 2000:
            x0, y0, x1, y1 = self.bbox()
            return math.hypot(x1 - x0, y1 - y0)
        d = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1)).max())

    def signed_area(self) -> float:
        v = self._v
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    def is_simple(self, tol: float = TAU_ON) -> bool:
        return is_simple(self, tol)


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def segments_intersect(s1: Segment, s2: Segment, tol: float = TAU_ON) -> Intersection:
    """Classify the intersection of two closed segments under a fuzz band ``tol``."""
    ax, ay = s1.a.x, s1.a.y
    d1x, d1y = s1.b.x - ax, s1.b.y - ay
    bx, by = s2.a.x, s2.a.y
    d2x, d2y = s2.b.x - bx, s2.b.y - by
    l1 = math.hypot(d1x, d1y)
    l2 = math.hypot(d2x, d2y)
    if l1 == 0.0 or l2 == 0.0:
        raise ValueError("segment endpoints must be distinct")
    denom = cross(d1x, d1y, d2x, d2y)
    wx, wy = bx - ax, by - ay
    if abs(denom) / max(l1, l2) <= tol:
        # parallel: collinear within tol resolves to Overlap or a touching point
        off = abs(cross(d1x, d1y, wx, wy)) / l1
        off2 = abs(cross(d2x, d2y, ax - bx, ay - by)) / l2
        if min(off, off2) > tol:
            return Intersection(IntersectionKind.DISJOINT)
        t0 = (wx * d1x + wy * d1y) / (l1 * l1)
        t1 = ((s2.b.x - ax) * d1x + (s2.b.y - ay) * d1y) / (l1 * l1)
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if (hi - lo) * l1 > tol:
            return Intersection(IntersectionKind.OVERLAP)
        if (lo - hi) * l1 > tol:
            return Intersection(IntersectionKind.DISJOINT)
        t = 0.5 * (lo + hi)
        return Intersection(IntersectionKind.POINT, Point2(ax + t * d1x, ay + t * d1y))
    t = cross(wx, wy, d2x, d2y) / denom
    u = cross(wx, wy, d1x, d1y) / denom
    tt, tu = tol / l1, tol / l2
    if -tt <= t <= 1 + tt and -tu <= u <= 1 + tu:
        t = min(max(t, 0.0), 1.0)
        return Intersection(IntersectionKind.POINT, Point2(ax + t * d1x, ay + t * d1y))
    return Intersection(IntersectionKind.DISJOINT)


def _check_area(c: PolyCurve, tol: float) -> float:
    area = c.signed_area()
    if abs(area) <= tol * max(c.length, 1.0):
        raise DegenerateCurve(f"near-zero signed area {area:.3g}")
    return area


def curve_orientation(c: PolyCurve, tol: float = TAU_ON) -> Orientation:
    if not c.closed:
        raise ValueError("orientation needs a closed curve")
    return Orientation.POSITIVE if _check_area(c, tol) > 0 else Orientation.NEGATIVE


def locate_points(points, c: PolyCurve, tol: float = TAU_ON) -> np.ndarray:
    """Vectorised :func:`point_in_polygon`; returns an array of ``Location``."""
    pts = _as_array(points)
    parity, dist = kernels.points_in_polygon(pts[:, 0], pts[:, 1], c.vertices[:, 0], c.vertices[:, 1])
    out = np.where(dist <= tol, Location.ON_BOUNDARY, np.where(parity, Location.INSIDE, Location.OUTSIDE))
    return out


def point_in_polygon(p: Point2, c: PolyCurve, tol: float = TAU_ON) -> Location:
    if not c.closed:
        raise ValueError("point_in_polygon needs a closed curve")
    _check_area(c, tol)
    return locate_points([tuple(p)], c, tol)[0]


def is_simple(c: PolyCurve, tol: float = TAU_ON) -> bool:
    """Pairwise test of non-adjacent edges (adjacent edges may only share their joint)."""
    r = c.ring()
    m = len(r) - 1
    a = r[:-1]
    b = r[1:]
    lo = np.minimum(a, b) - tol
    hi = np.maximum(a, b) + tol
    segs = c.segments()
    # candidate pairs by bounding-box overlap, then the exact predicate
    for i in range(m):
        ov = np.nonzero(np.all(lo[i] <= hi, axis=1) & np.all(lo <= hi[i], axis=1))[0]
        for j in ov:
            if j <= i:
                continue
            adjacent = j == i + 1 or (c.closed and i == 0 and j == m - 1)
            res = segments_intersect(segs[i], segs[j], tol)
            if res.kind is IntersectionKind.DISJOINT:
                continue
            if adjacent and res.kind is IntersectionKind.POINT:
                shared = segs[i].b if j == i + 1 else segs[i].a
                if res.point.dist(shared) <= tol:
                    continue
            return False
    return True


def circle(radius: float = 1.0, n: int = 64, center: Sequence[float] = (0.0, 0.0)) -> PolyCurve:
    """Regular ``n``-gon inscribed in a circle, counter-clockwise."""
    th = 2 * np.pi * np.arange(n) / n
    return PolyCurve(np.stack([center[0] + radius * np.cos(th), center[1] + radius * np.sin(th)], axis=1), closed=True)


def rectangle(x0: float, y0: float, x1: float, y1: float) -> PolyCurve:
    """Counter-clockwise rectangle boundary."""
    return PolyCurve([(x0, y0), (x1, y0), (x1, y1), (x0, y1)], closed=True)


def as_points(items: Iterable) -> list[Point2]:
    return [p if isinstance(p, Point2) else Point2(float(p[0]), float(p[1])) for p in items]

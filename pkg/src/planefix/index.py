"""Index of a fixed-point-free map along a polygonal curve.

The displacement ``f(x) - x`` is sampled along the curve and its angle is
lifted continuously; the index is the net number of turns. Sampling starts
from the vertices and bisects any parameter interval across which the raw
angle jumps by a quarter turn or more.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from . import kernels
from .errors import EndpointMismatch, FixedPointOnCurve, NonIntegralIndex, RefinementExhausted
from .geometry import TAU_ON, Point2, PolyCurve
from .maps import PlaneMap

MapLike = Union[PlaneMap, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class IndexConfig:
    delta_fix: float = 1e-9
    eps_int: float = 1e-6
    max_samples: int = 2 ** 20
    edge_samples: int = 4
    max_gap: float = math.pi / 2
    # also bisect where the displacement changes by more than this fraction of
    # its smaller endpoint magnitude; 0 disables
    chord_ratio: float = 1.0


DEFAULT_CONFIG = IndexConfig()


@dataclass(frozen=True)
class IndexValue:
    turns: float
    closed: bool = False

    @property
    def integer(self) -> int:
        return int(round(self.turns))

    def __int__(self) -> int:
        return self.integer


@dataclass(frozen=True)
class IndexCertificate:
    index: IndexValue
    samples_used: int
    min_displacement: float
    curve_id: str = ""
    map_id: str = ""
    raw_turns: float = 0.0
    curve: PolyCurve = field(default=None, repr=False, compare=False)

    @property
    def value(self) -> int:
        return self.index.integer

    def to_dict(self) -> dict:
        return {
            "index": self.index.integer if self.index.closed else self.index.turns,
            "raw_turns": self.raw_turns,
            "samples_used": self.samples_used,
            "min_displacement": self.min_displacement,
            "curve_id": self.curve_id,
            "map_id": self.map_id,
        }


def _map_fn(f: MapLike):
    return f.forward if isinstance(f, PlaneMap) else f


def _map_id(f: MapLike) -> str:
    return getattr(f, "id", None) or getattr(f, "__name__", "map")


def _curve_id(c: PolyCurve) -> str:
    x0, y0, x1, y1 = c.bbox()
    kind = "closed" if c.closed else "arc"
    return f"{kind}[{len(c)}]@({x0:.6g},{y0:.6g})-({x1:.6g},{y1:.6g})"


def _wrap(a: np.ndarray) -> np.ndarray:
    return (a + np.pi) % (2 * np.pi) - np.pi


def _initial_params(alpha: PolyCurve, config: IndexConfig) -> np.ndarray:
    s = alpha.vertex_params()
    k = max(1, config.edge_samples)
    frac = np.arange(k) / k
    t = (s[:-1, None] + frac[None, :] * np.diff(s)[:, None]).ravel()
    return np.append(t, 1.0)


class _Track:
    """Adaptive sampling state for one curve."""

    def __init__(self, alpha: PolyCurve, t: np.ndarray, pts: np.ndarray, disp: np.ndarray):
        self.alpha = alpha
        self.t = t
        self.pts = pts
        self.disp = disp
        self.norms = np.hypot(disp[:, 0], disp[:, 1])
        self.floor = len(t)
        self.pending = None
        self.error = None
        self.done = False

    def plan(self, config: IndexConfig):
        """Parameters to evaluate next, or None when converged."""
        norms = self.norms
        bad_fix = np.nonzero(norms <= config.delta_fix)[0]
        if bad_fix.size:
            i = int(bad_fix[np.argmin(norms[bad_fix])])
            self.error = FixedPointOnCurve(self.t[i], Point2(*self.pts[i]), norms[i],
                                           all_fixed=bool(np.all(norms <= config.delta_fix)))
            return None
        ang = np.arctan2(self.disp[:, 1], self.disp[:, 0])
        gaps = _wrap(np.diff(ang))
        bad = np.abs(gaps) >= config.max_gap
        if config.chord_ratio > 0:
            jump = np.hypot(*np.diff(self.disp, axis=0).T)
            bad |= jump > config.chord_ratio * np.minimum(norms[:-1], norms[1:])
        idx = np.nonzero(bad)[0]
        if idx.size == 0:
            self.done = True
            return None
        if len(self.t) + idx.size > config.max_samples:
            self.error = RefinementExhausted(
                f"sample budget {config.max_samples} exceeded with {idx.size} unresolved intervals"
            )
            return None
        t = self.t
        tm = 0.5 * (t[idx] + t[idx + 1])
        if np.any(tm <= t[idx]) or np.any(tm >= t[idx + 1]):
            # interval below float resolution: either a zero of the displacement
            # sits here, or the map jumps (both sides stay far from zero)
            j = int(idx[np.argmin(np.minimum(norms[idx], norms[idx + 1]))])
            if min(norms[j], norms[j + 1]) > 1e3 * config.delta_fix:
                self.error = RefinementExhausted(
                    f"displacement jumps at t={t[j]:.17g} without vanishing; the map is not continuous there"
                )
            else:
                self.error = FixedPointOnCurve(t[j], Point2(*self.pts[j]), norms[j])
            return None
        self.pending = (idx, tm)
        return self.alpha.at(tm)

    def absorb(self, pm: np.ndarray, dm: np.ndarray):
        idx, tm = self.pending
        self.pending = None
        self.t = np.insert(self.t, idx + 1, tm)
        self.pts = np.insert(self.pts, idx + 1, pm, axis=0)
        self.disp = np.insert(self.disp, idx + 1, dm, axis=0)
        self.norms = np.insert(self.norms, idx + 1, np.hypot(dm[:, 0], dm[:, 1]))

    def certificate(self, f, config: IndexConfig) -> IndexCertificate:
        raw, _, min_norm = kernels.lift_turns(self.disp[:, 0], self.disp[:, 1])
        alpha = self.alpha
        if alpha.closed:
            snapped = round(raw)
            if abs(raw - snapped) > config.eps_int:
                raise NonIntegralIndex(f"closed-curve turns {raw!r} not within {config.eps_int} of an integer")
            value = IndexValue(float(snapped), closed=True)
        else:
            value = IndexValue(raw, closed=False)
        return IndexCertificate(value, max(len(self.t), self.floor), float(min_norm),
                                _curve_id(alpha), _map_id(f), raw, alpha)


def index_batch(f: MapLike, curves, config: IndexConfig = DEFAULT_CONFIG) -> list:
    """Index along several curves sharing one map evaluation per refinement round.

    Returns one entry per curve: an :class:`IndexCertificate`, or the
    exception that computation raised (not re-raised here).
    """
    fn = _map_fn(f)
    curves = list(curves)
    if not curves:
        return []
    ts = [_initial_params(c, config) for c in curves]
    pts = [c.at(t) for c, t in zip(curves, ts)]
    allp = np.concatenate(pts)
    alld = fn(allp) - allp
    tracks = []
    off = 0
    for c, t, p in zip(curves, ts, pts):
        tracks.append(_Track(c, t, p, alld[off:off + len(t)]))
        off += len(t)
    active = list(tracks)
    while active:
        asks = []
        for tr in active:
            pm = tr.plan(config)
            if pm is not None:
                asks.append((tr, pm))
        if not asks:
            break
        allp = np.concatenate([pm for _, pm in asks])
        alld = fn(allp) - allp
        off = 0
        for tr, pm in asks:
            tr.absorb(pm, alld[off:off + len(pm)])
            off += len(pm)
        active = [tr for tr, _ in asks]
    out = []
    for tr in tracks:
        if tr.error is not None:
            out.append(tr.error)
            continue
        try:
            out.append(tr.certificate(f, config))
        except NonIntegralIndex as exc:
            out.append(exc)
    return out


def index_along(f: MapLike, alpha: PolyCurve, config: IndexConfig = DEFAULT_CONFIG) -> IndexCertificate:
    """Net turns of ``f(x) - x`` along ``alpha``.

    Raises ``FixedPointOnCurve`` with the offending parameter and point when a
    sample's displacement is at most ``config.delta_fix``.
    """
    res = index_batch(f, [alpha], config)[0]
    if isinstance(res, Exception):
        raise res
    return res


def index_value(f: MapLike, alpha: PolyCurve, config: IndexConfig = DEFAULT_CONFIG) -> float:
    """Shortcut: integer for closed curves, raw turns for arcs."""
    cert = index_along(f, alpha, config)
    return cert.index.integer if alpha.closed else cert.index.turns


def index_reverse_check(f: MapLike, alpha: PolyCurve, config: IndexConfig = DEFAULT_CONFIG) -> bool:
    a = index_along(f, alpha, config)
    b = index_along(f, alpha.reversed(), config)
    if alpha.closed:
        return a.index.integer + b.index.integer == 0
    return abs(a.index.turns + b.index.turns) <= config.eps_int


def conjugation_invariance_check(f: PlaneMap, g: PlaneMap, c: PolyCurve,
                                 config: IndexConfig = DEFAULT_CONFIG) -> bool:
    if not c.closed:
        raise ValueError("conjugation invariance only holds for closed curves")
    if g.affine is not None and not np.linalg.det(g.affine[0]) > 0:
        raise ValueError("conjugating map must preserve orientation")

    def gfg(p):
        return g.forward(f.forward(g.inverse(p)))

    lhs = index_along(gfg, c.transformed(g.forward), config)
    rhs = index_along(f, c, config)
    return lhs.index.integer == rhs.index.integer


class ArcHypothesis(enum.Enum):
    HALF_LINE = "half_line"
    JORDAN_ENCLOSURE = "jordan_enclosure"
    INTERIOR_EXTERIOR = "interior_exterior"


@dataclass(frozen=True)
class ArcConfig:
    """Which geometric hypothesis the caller asserts; recorded, not verified."""

    hypothesis: ArcHypothesis = ArcHypothesis.HALF_LINE
    tau_on: float = TAU_ON
    index: IndexConfig = DEFAULT_CONFIG


def arc_index_difference(f: MapLike, g: MapLike, alpha: PolyCurve, configuration: ArcConfig = ArcConfig()) -> int:
    """``i(f, alpha) - i(g, alpha)`` for maps agreeing at the arc's endpoints."""
    if alpha.closed:
        raise ValueError("arc_index_difference needs an open arc")
    ends = alpha.vertices[[0, -1]]
    fe = _map_fn(f)(ends)
    ge = _map_fn(g)(ends)
    gap = float(np.max(np.hypot(*(fe - ge).T)))
    if gap > configuration.tau_on:
        raise EndpointMismatch(f"endpoint images differ by {gap:.3g}")
    a = index_along(f, alpha, configuration.index).index.turns
    b = index_along(g, alpha, configuration.index).index.turns
    diff = a - b
    snapped = round(diff)
    if abs(diff - snapped) > configuration.index.eps_int:
        raise NonIntegralIndex(f"arc index difference {diff!r} is not an integer")
    return int(snapped)


def jordan_enclosure_check(f: MapLike, g: MapLike, alpha: PolyCurve, samples: int = 256) -> bool:
    """Best-effort check that ``f(alpha)`` followed by reversed ``g(alpha)`` is a
    positively oriented Jordan curve whose interior holds the arc."""
    from .geometry import Location, Orientation, curve_orientation, is_simple, locate_points

    t = np.linspace(0.0, 1.0, samples + 1)
    p = alpha.at(t)
    loop = np.vstack([_map_fn(f)(p), _map_fn(g)(p)[::-1][1:-1]])
    try:
        c = PolyCurve.dedup(loop, closed=True)
        if not is_simple(c) or curve_orientation(c) is not Orientation.POSITIVE:
            return False
    except Exception:
        return False
    return bool(np.all(locate_points(p, c) == Location.INSIDE))

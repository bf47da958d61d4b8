"""Fixed-point certification for plane homeomorphisms with invariant continua.

The pipeline surrounds the continuum by the boundary of a dyadic disc
approximation, measures the index of ``h`` along it, and then locates a
fixed point by quadtree degree bisection: a region whose boundary index is
nonzero contains a fixed point, and the indices of a partition add up.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    AmbiguousRegion,
    DepthLimitExceeded,
    FixedPointOnCurve,
    NotInvariant,
    PlanefixError,
    PreconditionError,
    SearchExhausted,
    SubdivisionStuck,
)
from .geometry import Location, Point2, PolyCurve, locate_points, rectangle
from .grid import (
    DEPTH_LIMIT,
    DiscApproximation,
    GridContinuum,
    Raster,
    access_segments,
    build_disc,
    cycle_curves,
)
from .index import DEFAULT_CONFIG, IndexCertificate, IndexConfig, IndexValue, index_along, index_batch
from .maps import TAU_INV, PlaneMap

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PipelineConfig:
    radius: float = 2.0 ** -20
    retry: int = 8
    depth_limit: int = DEPTH_LIMIT
    max_refinements: int = 6
    kappa: float = 1.5
    witness_only: bool = False
    # "strict": h(K) and h^-1(K) near K; "forward": only h(K); "off"
    invariance: str = "strict"
    index: IndexConfig = DEFAULT_CONFIG
    search_radius: float = 64.0
    tile: float = 0.25
    tau_inv: float = TAU_INV
    distinct: float = 1e-3


DEFAULT_PIPELINE = PipelineConfig()


# -- invariance -------------------------------------------------------------


@dataclass(frozen=True)
class InvarianceReport:
    forward_max: float
    backward_max: float
    threshold: float
    samples: int
    mode: str = "strict"

    @property
    def invariant(self) -> bool:
        if self.mode == "off":
            return True
        if self.mode == "forward":
            return self.forward_max <= self.threshold
        return self.forward_max <= self.threshold and self.backward_max <= self.threshold

    def to_dict(self) -> dict:
        return {
            "forward_max": self.forward_max,
            "backward_max": self.backward_max,
            "threshold": self.threshold,
            "samples": self.samples,
            "mode": self.mode,
            "invariant": self.invariant,
        }


def check_invariance(h: PlaneMap, g: GridContinuum, kappa: float = 1.5, per_edge: int = 4,
                     mode: str = "strict") -> InvarianceReport:
    """Largest distance from ``h(p)`` and ``h^-1(p)`` to the continuum over boundary samples ``p``."""
    ring = g.boundary().subdivided(per_edge).vertices
    with np.errstate(all="ignore"):
        fwd = h.forward(ring)
        bwd = h.inverse(ring) if mode == "strict" else np.zeros_like(ring)

    def worst(q):
        if not np.all(np.isfinite(q)):
            return math.inf
        return float(g.distance(q).max())

    thr = kappa * 2.0 ** -g.support[0]
    return InvarianceReport(worst(fwd), worst(bwd) if mode == "strict" else 0.0, thr, len(ring), mode)


# -- cuts and their classification ------------------------------------------


class CutClass(enum.Enum):
    DISJOINT = "disjoint"
    CONTRACTING = "contracting"
    EXPANDING = "expanding"
    VIOLATED = "violated"


def _ring_position(ring: np.ndarray, p: np.ndarray) -> float:
    """Arclength position along a closed ring (vertices once) of its nearest point to ``p``."""
    a = ring
    b = np.roll(ring, -1, axis=0)
    e = b - a
    ll = (e ** 2).sum(1)
    t = np.clip(((p - a) * e).sum(1) / ll, 0.0, 1.0)
    d = np.hypot(*(a + t[:, None] * e - p).T)
    k = int(np.argmin(d))
    cum = np.concatenate([[0.0], np.cumsum(np.sqrt(ll))])
    return float(cum[k] + t[k] * math.sqrt(ll[k]))


def _ring_path(ring: np.ndarray, s_from: float, s_to: float, forward: bool) -> np.ndarray:
    """Ring vertices strictly between two arclength positions, walking forward or backward."""
    b = np.roll(ring, -1, axis=0)
    ll = np.hypot(*(b - ring).T)
    cum = np.concatenate([[0.0], np.cumsum(ll)])
    total = cum[-1]
    pos = cum[:-1]
    if forward:
        span = (s_to - s_from) % total
        rel = (pos - s_from) % total
        sel = np.nonzero((rel > 1e-12) & (rel < span - 1e-12))[0]
        return ring[sel[np.argsort(rel[sel])]]
    span = (s_from - s_to) % total
    rel = (s_from - pos) % total
    sel = np.nonzero((rel > 1e-12) & (rel < span - 1e-12))[0]
    return ring[sel[np.argsort(rel[sel])]]


@dataclass(frozen=True, eq=False)
class CutRegion:
    """A cut (arc from the continuum out and back) and the bounded region it encloses with it."""

    cut: PolyCurve
    omega: PolyCurve
    region_probe: Point2
    classification: Optional[CutClass] = None

    @classmethod
    def build(cls, cut_points, g: GridContinuum) -> CutRegion:
        """Close ``cut_points`` (both ends on the continuum's frontier) along that frontier.

        Of the two ways round, the one whose polygon leaves the continuum
        outside is the bounded region.
        """
        cut = PolyCurve.dedup(cut_points, closed=False)
        kb = g.boundary().vertices
        a, b = cut.vertices[0], cut.vertices[-1]
        sa, sb = _ring_position(kb, a), _ring_position(kb, b)
        lvl, cells = g.support
        k, l = min(cells)
        h = 2.0 ** -lvl
        inner = np.array([[k * h, l * h]])
        choices = []
        for fwd in (True, False):
            path = _ring_path(kb, sb, sa, fwd)
            try:
                poly = PolyCurve.dedup(np.vstack([cut.vertices, path]), closed=True)
            except PlanefixError:
                continue
            if abs(poly.signed_area()) < 1e-15:
                continue
            if locate_points(inner, poly)[0] is Location.INSIDE:
                continue
            choices.append(poly)
        if not choices:
            raise AmbiguousRegion("cut does not bound a region off the continuum")
        omega = min(choices, key=lambda p: abs(p.signed_area()))
        if omega.signed_area() < 0:
            omega = omega.reversed()
        probes = _probe_mesh(omega, 2.0 ** -(lvl + 2), min_count=1)
        probe = Point2(*probes[0]) if len(probes) else Point2(*omega.vertices.mean(axis=0))
        return cls(cut, omega, probe)

    @classmethod
    def from_polygon(cls, cut_points, omega_points) -> CutRegion:
        cut = PolyCurve.dedup(cut_points, closed=False)
        omega = PolyCurve.dedup(omega_points, closed=True)
        if omega.signed_area() < 0:
            omega = omega.reversed()
        probes = _probe_mesh(omega, omega.diameter() / 16, min_count=1)
        return cls(cut, omega, Point2(*probes[0]))


def _probe_mesh(poly: PolyCurve, pitch: float, min_count: int = 8, max_halvings: int = 8,
                cap: int = 20000) -> np.ndarray:
    """Interior probe points on a regular mesh, refined until ``min_count`` fall inside."""
    x0, y0, x1, y1 = poly.bbox()
    for _ in range(max_halvings + 1):
        xs = np.arange(x0 + pitch / 2, x1, pitch)
        ys = np.arange(y0 + pitch / 2, y1, pitch)
        if len(xs) * len(ys) <= 4 * cap:
            grid = np.stack(np.meshgrid(xs, ys, indexing="ij"), -1).reshape(-1, 2)
            if len(grid):
                inside = grid[locate_points(grid, poly) == Location.INSIDE]
                if len(inside) >= min_count:
                    if len(inside) > cap:
                        inside = inside[:: int(math.ceil(len(inside) / cap))]
                    return inside
        pitch /= 2
    return np.empty((0, 2))


def _polylines_cross(p: np.ndarray, q: np.ndarray, tol: float) -> bool:
    """Do two open polylines share a point (within ``tol``)?"""
    a, b = p[:-1], p[1:]
    c, d = q[:-1], q[1:]
    a, b = a[:, None, :], b[:, None, :]
    c, d = c[None, :, :], d[None, :, :]

    def orient(u, v, w):
        return (v[..., 0] - u[..., 0]) * (w[..., 1] - u[..., 1]) - (v[..., 1] - u[..., 1]) * (w[..., 0] - u[..., 0])

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    proper = (o1 * o2 < 0) & (o3 * o4 < 0)
    if proper.any():
        return True

    def seg_dist(u, v, w):
        e = v - u
        ll = (e ** 2).sum(-1)
        t = np.clip(((w - u) * e).sum(-1) / np.where(ll > 0, ll, 1.0), 0, 1)
        return np.hypot(*np.moveaxis(u + t[..., None] * e - w, -1, 0))

    near = min(seg_dist(a, b, c).min(), seg_dist(a, b, d).min(), seg_dist(c, d, a).min(), seg_dist(c, d, b).min())
    return bool(near <= tol)


def _densify(curve: PolyCurve, pitch: float) -> np.ndarray:
    r = curve.ring()
    out = [r[:1]]
    for i in range(len(r) - 1):
        seg_len = float(np.hypot(*(r[i + 1] - r[i])))
        k = max(1, int(math.ceil(seg_len / pitch)))
        f = (np.arange(1, k + 1) / k)[:, None]
        out.append(r[i] + f * (r[i + 1] - r[i]))
    return np.vstack(out)


def classify_cut(h: PlaneMap, cut: CutRegion, g: Optional[GridContinuum] = None,
                 pitch: Optional[float] = None, tol: float = 1e-9) -> CutClass:
    """Decide which of ``h(Ω) ∩ Ω = ∅``, ``h(Ω) ⊂ Ω``, ``Ω ⊂ h(Ω)`` holds, by probing.

    With a continuum ``g``, probe images falling in ``g`` count as contained
    (they cannot, for ``h`` preserving ``g``, but test maps need not).

    ``VIOLATED`` when the cut meets its own image. Raises ``AmbiguousRegion``
    when the probes straddle the region boundary (refine and retry).
    """
    if pitch is None:
        pitch = 2.0 ** -(g.support[0] + 2) if g is not None else cut.omega.diameter() / 32
    dense = _densify(cut.cut, pitch / 2)
    if _polylines_cross(h.forward(dense), cut.cut.ring(), tol):
        return CutClass.VIOLATED
    probes = _probe_mesh(cut.omega, pitch)
    if len(probes) == 0:
        raise AmbiguousRegion("no interior probes in the cut region")
    fwd = locate_points(h.forward(probes), cut.omega)
    bwd = locate_points(h.inverse(probes), cut.omega)
    f_in = fwd != Location.OUTSIDE
    b_in = bwd != Location.OUTSIDE
    if g is not None:
        # Ω borders the continuum; an image landing in it does not leave Ω's closure side
        f_in |= g.contains(h.forward(probes))
        b_in |= g.contains(h.inverse(probes))
    if f_in.all():
        return CutClass.CONTRACTING
    if b_in.all():
        return CutClass.EXPANDING
    if not (fwd == Location.INSIDE).any() and not (bwd == Location.INSIDE).any():
        return CutClass.DISJOINT
    raise AmbiguousRegion(
        f"probe mesh straddles the region: {int(f_in.sum())}/{len(probes)} forward and "
        f"{int(b_in.sum())}/{len(probes)} backward images inside"
    )


# -- degree bisection ----------------------------------------------------------


@dataclass(frozen=True)
class LevelRecord:
    level: int
    parent_index: int
    child_indices: tuple
    chosen: int
    attempts: int

    @property
    def jittered(self) -> bool:
        return self.attempts > 1

    @property
    def sound(self) -> bool:
        return sum(self.child_indices) == self.parent_index

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "parent_index": self.parent_index,
            "child_indices": list(self.child_indices),
            "chosen": self.chosen,
            "attempts": self.attempts,
        }


@dataclass(frozen=True)
class FixedPointResult:
    point: Point2
    radius: float
    certificate_chain: tuple
    levels: tuple = ()
    displacement: float = float("nan")
    witnessed: bool = False

    def to_dict(self) -> dict:
        return {
            "point": [self.point.x, self.point.y],
            "radius": self.radius,
            "displacement": self.displacement,
            "witnessed": self.witnessed,
            "certificate_chain": [c.value for c in self.certificate_chain],
            "levels": [lv.to_dict() for lv in self.levels],
        }


Region = Union[PolyCurve, Sequence[PolyCurve]]


def _rings(region: Region) -> list[PolyCurve]:
    return [region] if isinstance(region, PolyCurve) else list(region)


def clip_ring(v: np.ndarray, x0: float, y0: float, x1: float, y1: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a closed ring against an axis-aligned box.

    For a concave ring the output may contain back-and-forth runs along the
    box; as a chain these cancel, so indices along the result are those of the
    true intersection.
    """
    for axis, bound, keep_hi in ((0, x0, True), (0, x1, False), (1, y0, True), (1, y1, False)):
        if len(v) == 0:
            break
        out = []
        prev = v[-1]
        pin = prev[axis] >= bound if keep_hi else prev[axis] <= bound
        for cur in v:
            cin = cur[axis] >= bound if keep_hi else cur[axis] <= bound
            if cin != pin:
                t = (bound - prev[axis]) / (cur[axis] - prev[axis])
                q = prev + t * (cur - prev)
                q[axis] = bound
                out.append(q)
            if cin:
                out.append(cur)
            prev, pin = cur, cin
        v = np.array(out).reshape(-1, 2)
    return v


def _clip_region(rings: list[PolyCurve], box) -> list[PolyCurve]:
    out = []
    for r in rings:
        v = clip_ring(r.vertices, *box)
        if len(v) < 3:
            continue
        try:
            c = PolyCurve.dedup(v, closed=True)
        except PlanefixError:
            continue
        if abs(c.signed_area()) <= 1e-300:
            continue
        out.append(c)
    return out


def _bbox(rings: list[PolyCurve]):
    b = np.array([r.bbox() for r in rings])
    return float(b[:, 0].min()), float(b[:, 1].min()), float(b[:, 2].max()), float(b[:, 3].max())


def _combine(certs: list[IndexCertificate], rings: list[PolyCurve]) -> IndexCertificate:
    total = sum(c.value for c in certs)
    return IndexCertificate(
        IndexValue(float(total), closed=True),
        sum(c.samples_used for c in certs),
        min(c.min_displacement for c in certs),
        certs[0].curve_id if len(certs) == 1 else f"{len(certs)} rings:" + certs[0].curve_id,
        certs[0].map_id,
        float(sum(c.raw_turns for c in certs)),
        rings[0] if len(rings) == 1 else None,
    )


def region_index(h, region: Region, config: IndexConfig = DEFAULT_CONFIG) -> IndexCertificate:
    """Index along the boundary cycles of a region (sum over its rings)."""
    rings = _rings(region)
    res = index_batch(h, rings, config)
    for r in res:
        if isinstance(r, Exception):
            raise r
    return _combine(res, rings)


def _jitter(box, attempt: int) -> tuple[float, float]:
    x0, y0, x1, y1 = box
    if attempt == 0:
        return 0.0, 0.0
    rng = np.random.default_rng(abs(hash((x0, y0, x1, y1))) % (2 ** 63))
    signs = rng.choice([-1.0, 1.0], size=(attempt, 2))[-1]
    mag = (attempt + 1) // 2
    return (signs[0] * mag * (x1 - x0) * 2.0 ** -5, signs[1] * mag * (y1 - y0) * 2.0 ** -5)


def locate_by_subdivision(h: PlaneMap, c: Region, cfg: PipelineConfig = DEFAULT_PIPELINE) -> FixedPointResult:
    """Quadtree degree bisection inside a closed curve of nonzero index."""
    rings = _rings(c)
    top = region_index(h, rings, cfg.index)
    if top.value == 0:
        raise PreconditionError("curve index is zero; degree bisection needs a nonzero index")
    chain = [top]
    levels = []
    parent = top.value
    level = 0
    while True:
        box = _bbox(rings)
        x0, y0, x1, y1 = box
        diam = math.hypot(x1 - x0, y1 - y0)
        if diam <= cfg.radius:
            break
        witness = None
        for attempt in range(cfg.retry + 1):
            jx, jy = _jitter(box, attempt)
            mx, my = 0.5 * (x0 + x1) + jx, 0.5 * (y0 + y1) + jy
            quads = [(x0, y0, mx, my), (mx, y0, x1, my), (mx, my, x1, y1), (x0, my, mx, y1)]
            kids = [_clip_region(rings, q) for q in quads]
            flat = [r for k in kids for r in k]
            res = index_batch(h, flat, cfg.index)
            errs = [r for r in res if isinstance(r, Exception)]
            if errs:
                fp = [e for e in errs if isinstance(e, FixedPointOnCurve)]
                if fp:
                    best = min(fp, key=lambda e: e.displacement)
                    if witness is None or best.displacement < witness.displacement:
                        witness = best
                continue
            certs, off = [], 0
            for k in kids:
                certs.append(_combine(res[off:off + len(k)], k) if k else None)
                off += len(k)
            idx = tuple(cc.value if cc is not None else 0 for cc in certs)
            if sum(idx) != parent:
                continue
            chosen = next(i for i, v in enumerate(idx) if v != 0)
            levels.append(LevelRecord(level, parent, idx, chosen, attempt + 1))
            rings = kids[chosen]
            parent = idx[chosen]
            chain.append(certs[chosen])
            break
        else:
            if witness is not None:
                p = witness.point
                return FixedPointResult(p, cfg.radius, tuple(chain), tuple(levels),
                                        _disp(h, p), witnessed=True)
            raise SubdivisionStuck(f"no consistent split after {cfg.retry + 1} attempts at level {level}")
        level += 1
    x0, y0, x1, y1 = _bbox(rings)
    p = Point2(0.5 * (x0 + x1), 0.5 * (y0 + y1))
    return FixedPointResult(p, 0.5 * math.hypot(x1 - x0, y1 - y0), tuple(chain), tuple(levels), _disp(h, p))


def _disp(h: PlaneMap, p: Point2) -> float:
    q = h.forward(np.array([[p.x, p.y]]))[0]
    return float(math.hypot(q[0] - p.x, q[1] - p.y))


# -- fixed point near an invariant continuum ---------------------------------


@dataclass(frozen=True)
class FixedPointFound:
    result: FixedPointResult
    index: IndexCertificate
    disc: DiscApproximation
    invariance: Optional[InvarianceReport] = None


@dataclass(frozen=True)
class IndexWitness:
    certificate: IndexCertificate
    expanding_count: int
    cuts: tuple
    disc: DiscApproximation
    access: tuple = ()
    epsilon: float = float("nan")
    invariance: Optional[InvarianceReport] = None

    @property
    def clean(self) -> bool:
        return all(c.classification not in (None, CutClass.VIOLATED) for c in self.cuts)

    @property
    def consistent(self) -> bool:
        return self.certificate.value == 1 + self.expanding_count

    def counts(self) -> dict:
        out = {k.value: 0 for k in CutClass}
        out["ambiguous"] = 0
        for c in self.cuts:
            out["ambiguous" if c.classification is None else c.classification.value] += 1
        return out


def _gate_invariance(h: PlaneMap, g: GridContinuum, cfg: PipelineConfig) -> Optional[InvarianceReport]:
    if cfg.invariance == "off":
        return None
    rep = check_invariance(h, g, cfg.kappa, mode=cfg.invariance)
    if not rep.invariant:
        raise NotInvariant(
            f"h does not preserve the continuum: forward {rep.forward_max:.3g}, backward "
            f"{rep.backward_max:.3g} > {rep.threshold:.3g}"
        )
    return rep


def _surrounding_disc(h: PlaneMap, g: GridContinuum, cfg: PipelineConfig, m0: Optional[int] = None):
    """Disc approximations from level ``m0`` up until ``h`` is fixed-point free on the boundary."""
    m0 = g.n if m0 is None else m0
    last = None
    top = min(m0 + cfg.max_refinements, cfg.depth_limit)
    for m in range(m0, top + 1):
        d = build_disc(g, m, cfg.depth_limit)
        try:
            return d, index_along(h, d.boundary, cfg.index)
        except FixedPointOnCurve as exc:
            if exc.all_fixed:
                raise
            last = exc
    if last is not None:
        raise last
    raise DepthLimitExceeded(f"no disc level available from {m0} within depth limit {cfg.depth_limit}")


def cut_witness(h: PlaneMap, g: GridContinuum, cfg: PipelineConfig = DEFAULT_PIPELINE,
                    invariance: Optional[InvarianceReport] = None, max_rounds: int = 12,
                    max_cuts: int = 4096) -> IndexWitness:
    """Boundary index plus the classified cuts between consecutive access segments.

    The disc level is raised (within ``cfg.max_refinements``) until access
    segments are shorter than a third of the smallest boundary displacement,
    and the boundary starts out split into arcs shorter than that. Sites whose
    access point is (nearly) fixed are dropped, and any arc whose cut meets its
    own image, or whose region is ambiguous, is bisected, for up to
    ``max_rounds`` rounds.
    """
    d, cert = _surrounding_disc(h, g, cfg)
    eps = cert.min_displacement / 3.0
    top = min(g.n + cfg.max_refinements, cfg.depth_limit)
    while SQRT2 * 2.0 ** -d.m >= eps and d.m < top:
        d, cert = _surrounding_disc(h, g, cfg, d.m + 1)
        eps = cert.min_displacement / 3.0
    m = d.m
    C = d.boundary
    ring = C.ring()
    vparams = C.vertex_params()
    n0 = int(min(max(3, math.floor(C.length / eps) + 1), 512))
    pitch = 2.0 ** -(m + 2)
    fixed_tol = 2.0 ** -(m + 4)

    sites: dict = {}

    def site(t):
        if t not in sites:
            p = C.at(np.array([t]))[0]
            a = access_segments(d, [tuple(p)])[0]
            q = np.array([a.x_b.as_tuple()])
            near_fixed = float(np.hypot(*(h.forward(q) - q)[0])) <= fixed_tol
            sites[t] = (p, a, near_fixed)
        return sites[t]

    cache: dict = {}

    def cut(t0, t1):
        key = (t0, t1)
        if key not in cache:
            p0, a0, _ = site(t0)
            p1, a1, _ = site(t1 % 1.0)
            if t1 > t0:
                inner = ring[(vparams > t0) & (vparams < t1)]
            else:
                inner = np.vstack([ring[vparams > t0], ring[1:][vparams[1:] < t1]])
            pts = np.vstack([[a0.x_b.as_tuple()], [p0], inner, [p1], [a1.x_b.as_tuple()]])
            try:
                cr = CutRegion.build(pts, g)
                cls = classify_cut(h, cr, g, pitch=pitch)
            except AmbiguousRegion:
                cr = CutRegion(PolyCurve.dedup(pts), PolyCurve.dedup(pts, closed=True), Point2(*p0), None)
                cls = None
            cache[key] = replace(cr, classification=cls)
        return cache[key]

    ts = [i / n0 for i in range(n0)]
    for _ in range(max_rounds):
        ts = [t for t in ts if not site(t)[2]]
        if len(ts) < 2:
            raise AmbiguousRegion("every access point is (nearly) fixed")
        pairs = [(ts[i], ts[(i + 1) % len(ts)]) for i in range(len(ts))]
        cuts = [cut(a, b) for a, b in pairs]
        bad = [i for i, c in enumerate(cuts) if c.classification in (None, CutClass.VIOLATED)]
        if not bad or len(ts) + len(bad) > max_cuts:
            break
        extra = []
        for i in bad:
            a, b = pairs[i]
            span = (b - a) % 1.0 or 1.0
            extra.append((a + span / 2) % 1.0)
        ts = sorted(set(ts) | set(extra))
    acc = tuple(site(t)[1] for t in ts)
    expanding = sum(c.classification is CutClass.EXPANDING for c in cuts)
    return IndexWitness(cert, expanding, tuple(cuts), d, acc, eps, invariance)


def certify_theorem_a(h: PlaneMap, g: GridContinuum, cfg: PipelineConfig = DEFAULT_PIPELINE):
    """Fixed point of ``h`` near an invariant non-separating continuum, or the index witness."""
    rep = _gate_invariance(h, g, cfg)
    if cfg.witness_only:
        return cut_witness(h, g, cfg, rep)
    d, cert = _surrounding_disc(h, g, cfg)
    if cert.value != 0:
        res = locate_by_subdivision(h, d.boundary, cfg)
    else:
        found = tile_search(h, d, cfg)
        if not found:
            raise SearchExhausted("boundary index is zero and no tile carries a nonzero index")
        res = found[0]
    return FixedPointFound(res, cert, d, rep)


# -- tiles, the two-point scenario and finite invariant sets --------------


def _tiles(d: DiscApproximation, size: float):
    r = d.raster
    t = max(1, int(round(size * 2 ** d.m)))
    nx, ny = r.mask.shape
    for i in range(0, nx, t):
        for j in range(0, ny, t):
            sub = np.zeros_like(r.mask)
            sub[i:i + t, j:j + t] = r.mask[i:i + t, j:j + t]
            if sub.any():
                yield Raster(r.level, r.k0, r.l0, sub), (i, j, t)


def _tile_box(r: Raster, i: int, j: int, t: int):
    h = 2.0 ** -(r.level + 1)
    return ((2 * (r.k0 + i) - 1) * h, (2 * (r.l0 + j) - 1) * h,
            (2 * (r.k0 + i + t) - 1) * h, (2 * (r.l0 + j + t) - 1) * h)


def tile_search(h: PlaneMap, d: DiscApproximation, cfg: PipelineConfig = DEFAULT_PIPELINE,
                exclude: Sequence[Point2] = (), exclude_radius: float = 0.0) -> list[FixedPointResult]:
    """Locate fixed points in every tile of the disc whose boundary index is nonzero.

    Tiles whose box lies within ``exclude_radius`` of an excluded point are
    skipped. A fixed point met on a tile boundary is reported as a witnessed
    point.
    """
    out: list[FixedPointResult] = []
    tiles = []
    for sub, (i, j, t) in _tiles(d, cfg.tile):
        x0, y0, x1, y1 = _tile_box(sub, i, j, t)
        skip = False
        for p in exclude:
            cx = min(max(p.x, x0), x1)
            cy = min(max(p.y, y0), y1)
            if math.hypot(cx - p.x, cy - p.y) <= exclude_radius:
                skip = True
        if not skip:
            tiles.append(cycle_curves(sub))
    flat = [c for rings in tiles for c in rings]
    res = index_batch(h, flat, cfg.index)
    off = 0
    for rings in tiles:
        part = res[off:off + len(rings)]
        off += len(rings)
        errs = [r for r in part if isinstance(r, Exception)]
        if errs:
            for e in errs:
                if isinstance(e, FixedPointOnCurve):
                    out.append(FixedPointResult(e.point, cfg.index.delta_fix, (), (), _disp(h, e.point), True))
            continue
        if sum(r.value for r in part) != 0:
            out.append(locate_by_subdivision(h, rings, cfg))
    return out


def distinct_points(results: Sequence[FixedPointResult], tol: float) -> list[FixedPointResult]:
    kept: list[FixedPointResult] = []
    for r in results:
        if all(r.point.dist(k.point) > tol for k in kept):
            kept.append(r)
    return kept


@dataclass(frozen=True)
class ScenarioResult:
    points: tuple
    first: FixedPointFound
    side_preserving: Optional[bool] = None


def two_fixed_points_scenario(h: PlaneMap, g: GridContinuum, cfg: PipelineConfig = DEFAULT_PIPELINE,
                              side_preserving: Optional[bool] = None) -> ScenarioResult:
    """Certify one fixed point, excise its tile, and search the remaining tiles for more."""
    first = certify_theorem_a(h, g, replace(cfg, witness_only=False))
    p1 = first.result.point
    more = tile_search(h, first.disc, cfg, exclude=[p1], exclude_radius=0.0)
    pts = distinct_points([first.result, *more], cfg.distinct)
    return ScenarioResult(tuple(pts), first, side_preserving)


def certify_theorem_d(h: PlaneMap, invariant_set: Sequence, cfg: PipelineConfig = DEFAULT_PIPELINE) -> FixedPointResult:
    """Fixed point of ``h`` given a finite invariant set, found by expanding square search."""
    pts = np.array([tuple(p) for p in invariant_set], dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise PreconditionError("the invariant set must be non-empty")
    img = h.forward(pts)
    pre = h.inverse(pts)
    for q in (img, pre):
        gap = np.sqrt(((q[:, None, :] - pts[None, :, :]) ** 2).sum(-1)).min(axis=1).max()
        if gap > cfg.tau_inv:
            raise PreconditionError(f"h does not permute the given set (gap {gap:.3g})")
    step = 2.0 ** -10
    center = np.round(pts.mean(axis=0) / step) * step
    reach = float(np.abs(pts - center).max())
    half = 2.0 ** math.ceil(math.log2(max(reach, step))) * 1.25
    while half <= cfg.search_radius:
        for attempt in range(cfg.retry + 1):
            jx, jy = _jitter((center[0] - half, center[1] - half, center[0] + half, center[1] + half), attempt)
            sq = rectangle(center[0] - half + jx, center[1] - half + jy, center[0] + half + jx, center[1] + half + jy)
            try:
                cert = index_along(h, sq, cfg.index)
            except FixedPointOnCurve:
                continue
            if cert.value != 0:
                return locate_by_subdivision(h, sq, cfg)
            break
        half *= 2
    raise SearchExhausted(f"no square of half-side <= {cfg.search_radius} around the set has nonzero index")

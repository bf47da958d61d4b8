"""Continua as unions of closed dyadic cells, and their disc approximations.

A cell ``(k, l)`` at level ``n`` is the closed square of side ``2**-n``
centred at ``(k / 2**n, l / 2**n)``. A :class:`GridContinuum` denotes the
union of its closed cells. Exact comparisons are carried out in integer
units of ``2**-(L + 1)`` where ``L`` is the finest level involved, so cell
corners ``(2k +- 1) / 2**(n + 1)`` are integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .errors import DepthLimitExceeded, GridFormatError, InadmissibleContinuum, NotADisc, SiteOffBoundary
from .geometry import TAU_ON, Point2, PolyCurve, Segment

DEPTH_LIMIT = 24
HOLE_PAD = 2


@dataclass(frozen=True)
class Raster:
    """Cell set as a boolean mask; ``mask[i, j]`` is cell ``(k0 + i, l0 + j)``."""

    level: int
    k0: int
    l0: int
    mask: np.ndarray

    @classmethod
    def from_cells(cls, level: int, cells: Iterable[tuple[int, int]], pad: int = 0) -> Raster:
        arr = np.array(sorted(cells), dtype=np.int64).reshape(-1, 2)
        if len(arr) == 0:
            raise InadmissibleContinuum("empty cell set")
        k0, l0 = arr.min(axis=0) - pad
        k1, l1 = arr.max(axis=0) + pad
        mask = np.zeros((int(k1 - k0 + 1), int(l1 - l0 + 1)), dtype=bool)
        mask[arr[:, 0] - k0, arr[:, 1] - l0] = True
        return cls(level, int(k0), int(l0), mask)

    def padded(self, pad: int) -> Raster:
        return Raster(self.level, self.k0 - pad, self.l0 - pad, np.pad(self.mask, pad))

    def cells(self) -> frozenset:
        ii, jj = np.nonzero(self.mask)
        return frozenset(zip((ii + self.k0).tolist(), (jj + self.l0).tolist()))

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    def contains_cell(self, k: int, l: int) -> bool:
        i, j = k - self.k0, l - self.l0
        return 0 <= i < self.mask.shape[0] and 0 <= j < self.mask.shape[1] and bool(self.mask[i, j])

    def cell_of(self, points) -> np.ndarray:
        """Integer indices of the cells whose interior-or-lower-left holds each point."""
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        return np.floor(p * 2.0 ** self.level + 0.5).astype(np.int64)

    def covers(self, points) -> np.ndarray:
        """Points lying in the union of the closed cells."""
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        s = 2.0 ** self.level
        out = np.zeros(len(p), dtype=bool)
        # a point on a cell edge or corner belongs to up to four closed cells
        for ox in (-1e-12, 1e-12):
            for oy in (-1e-12, 1e-12):
                k = np.floor((p[:, 0] + ox) * s + 0.5).astype(np.int64) - self.k0
                l = np.floor((p[:, 1] + oy) * s + 0.5).astype(np.int64) - self.l0
                ok = (k >= 0) & (k < self.mask.shape[0]) & (l >= 0) & (l < self.mask.shape[1])
                hit = np.zeros(len(p), dtype=bool)
                hit[ok] = self.mask[k[ok], l[ok]]
                out |= hit
        return out


def cell_box(k: int, l: int, level: int) -> tuple[float, float, float, float]:
    h = 2.0 ** -(level + 1)
    return ((2 * k - 1) * h, (2 * l - 1) * h, (2 * k + 1) * h, (2 * l + 1) * h)


@dataclass(frozen=True, eq=False)
class GridContinuum:
    """Union of closed dyadic cells at level ``n``.

    ``support`` holds the ``(level, cells)`` pair whose union is the point
    set; it differs from ``(n, cells)`` only for refined continua, whose
    cells cover the support conservatively.
    """

    n: int
    cells: frozenset
    support: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset((int(k), int(l)) for k, l in self.cells))
        if not self.cells:
            raise InadmissibleContinuum("a continuum needs at least one cell")
        if self.n < 0:
            raise ValueError("resolution exponent must be >= 0")
        if self.support is None:
            object.__setattr__(self, "support", (self.n, self.cells))

    def __eq__(self, other) -> bool:
        return isinstance(other, GridContinuum) and self.n == other.n and self.cells == other.cells \
            and self.support == other.support

    def __hash__(self) -> int:
        return hash((self.n, self.cells))

    @cached_property
    def raster(self) -> Raster:
        return Raster.from_cells(self.n, self.cells)

    @cached_property
    def support_raster(self) -> Raster:
        lvl, cells = self.support
        return Raster.from_cells(lvl, cells)

    @cached_property
    def boxes(self) -> np.ndarray:
        """``(N, 4)`` array of ``x0, y0, x1, y1`` for the support cells (exact dyadics)."""
        lvl, cells = self.support
        arr = np.array(sorted(cells), dtype=float)
        h = 2.0 ** -(lvl + 1)
        return np.stack([(2 * arr[:, 0] - 1) * h, (2 * arr[:, 1] - 1) * h,
                         (2 * arr[:, 0] + 1) * h, (2 * arr[:, 1] + 1) * h], axis=1)

    def bounds(self) -> tuple[float, float, float, float]:
        b = self.boxes
        return float(b[:, 0].min()), float(b[:, 1].min()), float(b[:, 2].max()), float(b[:, 3].max())

    def distance(self, points, chunk: int = 4096) -> np.ndarray:
        """Euclidean distance from each point to the support point set."""
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        b = self.boxes
        out = np.empty(len(p))
        for s in range(0, len(p), chunk):
            q = p[s:s + chunk]
            dx = np.maximum(np.maximum(b[None, :, 0] - q[:, None, 0], q[:, None, 0] - b[None, :, 2]), 0.0)
            dy = np.maximum(np.maximum(b[None, :, 1] - q[:, None, 1], q[:, None, 1] - b[None, :, 3]), 0.0)
            out[s:s + chunk] = np.sqrt(dx * dx + dy * dy).min(axis=1)
        return out

    def contains(self, points, tol: float = 0.0) -> np.ndarray:
        if tol == 0.0:
            return self.support_raster.covers(points)
        return self.distance(points) <= tol

    def boundary(self) -> PolyCurve:
        """Traced frontier of the support (requires a pinch-free support)."""
        return trace_boundary(self.support_raster)

    def with_cells(self, n: int, cells) -> GridContinuum:
        return GridContinuum(n, frozenset(cells), self.support)


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    cell_count: int
    components: int
    enclosed_cells: int

    @property
    def connected(self) -> bool:
        return self.components == 1

    @property
    def non_separating(self) -> bool:
        return self.enclosed_cells == 0

    @property
    def admissible(self) -> bool:
        return self.connected and self.non_separating

    def to_dict(self) -> dict:
        return {
            "cell_count": self.cell_count,
            "components": self.components,
            "connected": self.connected,
            "enclosed_cells": self.enclosed_cells,
            "non_separating": self.non_separating,
            "admissible": self.admissible,
        }


def count_components(mask: np.ndarray) -> int:
    remaining = mask.copy()
    count = 0
    while remaining.any():
        seed = np.zeros_like(remaining)
        i, j = np.argwhere(remaining)[0]
        seed[i, j] = True
        remaining &= ~kernels.flood4(remaining, seed)
        count += 1
    return count


def frame_reachable(free: np.ndarray) -> np.ndarray:
    seeds = np.zeros_like(free)
    seeds[0, :] = seeds[-1, :] = True
    seeds[:, 0] = seeds[:, -1] = True
    return kernels.flood4(free, seeds & free)


def validate_continuum(g: GridContinuum) -> ValidationReport:
    r = g.raster.padded(HOLE_PAD)
    comps = count_components(r.mask)
    free = ~r.mask
    enclosed = int((free & ~frame_reachable(free)).sum())
    return ValidationReport(len(g.cells), comps, enclosed)


def require_admissible(g: GridContinuum) -> None:
    rep = validate_continuum(g)
    if not rep.admissible:
        raise InadmissibleContinuum(
            f"continuum not admissible: {rep.components} component(s), {rep.enclosed_cells} enclosed cell(s)"
        )


# -- refinement and discs -------------------------------------------------


def _check_depth(m: int, depth_limit: int) -> None:
    if m > depth_limit:
        raise DepthLimitExceeded(f"level {m} exceeds depth limit {depth_limit}")


def covering_raster(g: GridContinuum, m: int) -> Raster:
    """Cells at level ``m`` whose closed squares meet the support point set."""
    lvl, cells = g.support
    if m < lvl:
        raise ValueError(f"target level {m} is coarser than the support level {lvl}")
    d = 1 << (m - lvl)
    arr = np.array(sorted(cells), dtype=np.int64)
    # fine k with (2k - 1) <= (2j + 1) d and (2k + 1) >= (2j - 1) d
    lo = -(-((2 * arr - 1) * d - 1) // 2)
    hi = ((2 * arr + 1) * d + 1) // 2
    k0, l0 = lo.min(axis=0)
    k1, l1 = hi.max(axis=0)
    mask = np.zeros((int(k1 - k0 + 1), int(l1 - l0 + 1)), dtype=bool)
    for (a, b), (c, e) in zip(lo - (k0, l0), hi - (k0, l0)):
        mask[a:c + 1, b:e + 1] = True
    return Raster(m, int(k0), int(l0), mask)


def refine(g: GridContinuum, m: int, depth_limit: int = DEPTH_LIMIT) -> GridContinuum:
    if m < g.n:
        raise ValueError(f"refine target {m} is coarser than {g.n}")
    _check_depth(m, depth_limit)
    if m == g.n:
        return g
    return GridContinuum(m, covering_raster(g, m).cells(), g.support)


def fill_holes(r: Raster, pad: int = HOLE_PAD) -> Raster:
    """Add every complement cell not 4-connected to the padded frame."""
    p = r.padded(pad)
    free = ~p.mask
    return Raster(p.level, p.k0, p.l0, ~frame_reachable(free))


@dataclass(frozen=True, eq=False)
class DiscApproximation:
    m: int
    raster: Raster
    boundary: PolyCurve
    source: GridContinuum
    covering: Raster = field(repr=False, default=None)

    @cached_property
    def region(self) -> frozenset:
        return self.raster.cells()

    def contains(self, points) -> np.ndarray:
        return self.raster.covers(points)


def build_disc(g: GridContinuum, m: int, depth_limit: int = DEPTH_LIMIT, check: bool = True) -> DiscApproximation:
    """Cells meeting the continuum at level ``m`` plus the bounded holes they enclose."""
    _check_depth(m, depth_limit)
    if m < g.n:
        raise ValueError(f"disc level {m} is coarser than the continuum level {g.n}")
    if check:
        require_admissible(g)
    q = covering_raster(g, m)
    filled = fill_holes(q)
    if count_components(filled.mask) != 1:
        raise NotADisc("filled region is not 4-connected")
    boundary = trace_boundary(filled)
    return DiscApproximation(m, filled, boundary, g, q)


def disc_nested(inner: DiscApproximation, outer: DiscApproximation) -> bool:
    """Point-set inclusion of one disc approximation in a coarser one.

    Between adjacent levels the coarse grid lines split each fine cell into
    exact quarters, so testing the quarter centres decides inclusion.
    """
    if inner.m <= outer.m:
        raise ValueError("inner disc must be at a finer level")
    cells = np.array(sorted(inner.region), dtype=float)
    h = 2.0 ** -inner.m
    q = h / 4
    offs = np.array([[-q, -q], [q, -q], [q, q], [-q, q]])
    pts = (cells[:, None, :] * h + offs[None, :, :]).reshape(-1, 2)
    return bool(outer.raster.covers(pts).all())


def max_boundary_distance(d: DiscApproximation) -> float:
    """Largest distance from a boundary vertex of the disc to the continuum."""
    return float(d.source.distance(d.boundary.vertices).max())


def _boundary_edges(mask: np.ndarray):
    """Directed unit edges (a, b) -> (c, d) on lattice vertices with the region on the left."""
    p = np.pad(mask, 1)
    inner = p[1:-1, 1:-1]
    ii, jj = np.nonzero(inner & ~p[1:-1, :-2])   # bottom
    edges = [np.stack([ii, jj, ii + 1, jj], 1)]
    ii, jj = np.nonzero(inner & ~p[2:, 1:-1])    # right
    edges.append(np.stack([ii + 1, jj, ii + 1, jj + 1], 1))
    ii, jj = np.nonzero(inner & ~p[1:-1, 2:])    # top
    edges.append(np.stack([ii + 1, jj + 1, ii, jj + 1], 1))
    ii, jj = np.nonzero(inner & ~p[:-2, 1:-1])   # left
    edges.append(np.stack([ii, jj + 1, ii, jj], 1))
    return np.concatenate(edges)


def _turn_rank(din, dout) -> int:
    # prefer left turns at pinch vertices: left < straight < right
    c = din[0] * dout[1] - din[1] * dout[0]
    return 0 if c > 0 else (1 if c == 0 else 2)


def trace_cycles(r: Raster) -> list[list[tuple[int, int]]]:
    """All boundary cycles of a cell set as lattice-vertex index lists.

    Outer boundaries run counter-clockwise and holes clockwise (region on
    the left). At a pinch vertex the trace turns left, so diagonally touching
    cells yield separate cycles.
    """
    edges = _boundary_edges(r.mask)
    out: dict[tuple[int, int], list[int]] = {}
    for idx, (a, b, _, _) in enumerate(edges.tolist()):
        out.setdefault((a, b), []).append(idx)
    used = np.zeros(len(edges), dtype=bool)
    order = np.lexsort((edges[:, 0], edges[:, 1]))
    cycles = []
    for start in order.tolist():
        if used[start]:
            continue
        cyc = []
        e = start
        while not used[e]:
            used[e] = True
            a, b, c, d = edges[e].tolist()
            cyc.append((a, b))
            cands = [x for x in out[(c, d)] if not used[x]]
            if not cands:
                break
            if len(cands) > 1:
                din = (c - a, d - b)
                cands.sort(key=lambda x: _turn_rank(din, (edges[x][2] - c, edges[x][3] - d)))
            e = cands[0]
        cycles.append(cyc)
    return cycles


def _vertex_coords(r: Raster, verts) -> np.ndarray:
    v = np.asarray(verts, dtype=np.int64)
    h = 2.0 ** -(r.level + 1)
    return np.stack([(2 * (v[:, 0] + r.k0) - 1) * h, (2 * (v[:, 1] + r.l0) - 1) * h], axis=1)


def trace_boundary(region) -> PolyCurve:
    """Positively oriented frontier of a disc-shaped cell set, one lattice vertex per unit step."""
    r = region if isinstance(region, Raster) else Raster.from_cells(*region)
    cycles = trace_cycles(r)
    if len(cycles) != 1:
        raise NotADisc(f"region boundary has {len(cycles)} cycles")
    cyc = cycles[0]
    if len(set(cyc)) != len(cyc):
        raise NotADisc("region boundary touches itself at a vertex")
    return PolyCurve(_vertex_coords(r, cyc), closed=True)


def cycle_curves(r: Raster) -> list[PolyCurve]:
    return [PolyCurve(_vertex_coords(r, c), closed=True) for c in trace_cycles(r)]


# -- access segments ------------------------------------------------------


@dataclass(frozen=True)
class AccessSegment:
    b: Point2
    x_b: Point2
    cell: tuple[int, int]

    @property
    def segment(self) -> Optional[Segment]:
        return None if self.degenerate else Segment(self.b, self.x_b)

    @property
    def degenerate(self) -> bool:
        return self.b == self.x_b

    @property
    def length(self) -> float:
        return self.b.dist(self.x_b)


def _clamp(v: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return lo if v < lo else (hi if v > hi else v)


def _support_cells_meeting(g: GridContinuum, k: int, l: int, m: int) -> list[tuple[int, int]]:
    lvl, cells = g.support
    d = 1 << (m - lvl)
    out = []
    # support cells j with (2j - 1) d <= 2k + 1 and (2j + 1) d >= 2k - 1
    jlo = -(-(2 * k - 1 - d) // (2 * d))
    jhi = (2 * k + 1 + d) // (2 * d)
    ilo = -(-(2 * l - 1 - d) // (2 * d))
    ihi = (2 * l + 1 + d) // (2 * d)
    for a in range(jlo, jhi + 1):
        for b in range(ilo, ihi + 1):
            if (a, b) in cells:
                out.append((a, b))
    return out


def nearest_in_cell(g: GridContinuum, b: Point2, cell: tuple[int, int], m: int):
    """Exact nearest point of ``support ∩ cell`` to ``b``; lexicographic tie-break.

    Returns ``(squared distance, (x, y))`` as Fractions, or ``None`` when the
    cell misses the support.
    """
    lvl, _ = g.support
    k, l = cell
    h = Fraction(1, 2 ** (m + 1))
    qx0, qy0, qx1, qy1 = (2 * k - 1) * h, (2 * l - 1) * h, (2 * k + 1) * h, (2 * l + 1) * h
    hs = Fraction(1, 2 ** (lvl + 1))
    bx, by = Fraction(b.x), Fraction(b.y)
    best = None
    for a, c in _support_cells_meeting(g, k, l, m):
        x0 = max(qx0, (2 * a - 1) * hs)
        x1 = min(qx1, (2 * a + 1) * hs)
        y0 = max(qy0, (2 * c - 1) * hs)
        y1 = min(qy1, (2 * c + 1) * hs)
        if x0 > x1 or y0 > y1:
            continue
        px, py = _clamp(bx, x0, x1), _clamp(by, y0, y1)
        key = ((px - bx) ** 2 + (py - by) ** 2, (px, py))
        if best is None or key < best:
            best = key
    return best


def access_segments(d: DiscApproximation, sites: Sequence, tol: float = TAU_ON) -> list[AccessSegment]:
    """Segments from boundary sites to their nearest continuum points.

    Each site is served by a region cell containing it that meets the
    continuum; over those cells the overall nearest point wins, ties broken
    lexicographically by ``(x, y)`` and then by cell index.
    """
    from .geometry import locate_points, Location

    pts = [p if isinstance(p, Point2) else Point2(float(p[0]), float(p[1])) for p in sites]
    if not pts:
        return []
    arr = np.array([p.as_tuple() for p in pts])
    loc = locate_points(arr, d.boundary, tol)
    off = [i for i, v in enumerate(loc) if v is not Location.ON_BOUNDARY]
    if off:
        raise SiteOffBoundary(f"site {pts[off[0]]} is not on the disc boundary")
    m = d.m
    scale = 2.0 ** m
    out = []
    for p in pts:
        fx, fy = p.x * scale + 0.5, p.y * scale + 0.5
        ks = {math.floor(fx)} | ({math.floor(fx) - 1} if fx == math.floor(fx) else set())
        ls = {math.floor(fy)} | ({math.floor(fy) - 1} if fy == math.floor(fy) else set())
        best = None
        for k in sorted(ks):
            for l in sorted(ls):
                if not d.raster.contains_cell(k, l):
                    continue
                cand = nearest_in_cell(d.source, p, (k, l), m)
                if cand is None:
                    continue
                key = (cand[0], cand[1], (k, l))
                if best is None or key < best:
                    best = key
        if best is None:
            raise SiteOffBoundary(f"site {p} has no adjacent region cell meeting the continuum")
        _, (x, y), cell = best
        out.append(AccessSegment(p, Point2(float(x), float(y)), cell))
    return out


def boundary_sites(d: DiscApproximation, count: int, rng: np.random.Generator, sub: int = 4) -> list[Point2]:
    """Random dyadic sites on the disc boundary (distinct, at resolution ``2**-(m + sub)``)."""
    v = d.boundary.ring()
    nedges = len(v) - 1
    steps = 1 << sub
    chosen = set()
    out = []
    total = nedges * steps
    picks = rng.choice(total, size=min(count, total), replace=False)
    for q in sorted(picks.tolist()):
        e, s = divmod(q, steps)
        a, b = v[e], v[e + 1]
        pt = a + (b - a) * (s / steps)
        key = (float(pt[0]), float(pt[1]))
        if key not in chosen:
            chosen.add(key)
            out.append(Point2(*key))
    return out


# -- file format ----------------------------------------------------------


def dumps(g: GridContinuum) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{k} {l}" for k, l in sorted(g.cells)]
    return "\n".join(lines) + "\n"


def loads(text: str) -> GridContinuum:
    n = None
    cells = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        parts = line.split()
        col = len(line) - len(line.lstrip()) + 1
        if n is None:
            if parts[0] != "n" or len(parts) != 2:
                raise GridFormatError("expected header 'n <exponent>'", lineno, col)
            try:
                n = int(parts[1])
            except ValueError:
                raise GridFormatError(f"bad exponent '{parts[1]}'", lineno, line.index(parts[1]) + 1) from None
            if n < 0 or n > DEPTH_LIMIT:
                raise GridFormatError(f"exponent {n} outside 0..{DEPTH_LIMIT}", lineno, line.index(parts[1]) + 1)
            continue
        if len(parts) != 2:
            raise GridFormatError(f"expected '<k> <l>', got {len(parts)} field(s)", lineno, col)
        vals = []
        start = 0
        for tok in parts:
            pos = line.index(tok, start)
            start = pos + len(tok)
            try:
                vals.append(int(tok))
            except ValueError:
                raise GridFormatError(f"bad integer '{tok}'", lineno, pos + 1) from None
        cells.append(tuple(vals))
    if n is None:
        raise GridFormatError("missing header 'n <exponent>'", 1, 1)
    if not cells:
        raise GridFormatError("no cells listed")
    return GridContinuum(n, frozenset(cells))


def read_grid(path) -> GridContinuum:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_grid(g: GridContinuum, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))


# -- builders -------------------------------------------------------------


def disc_cells(radius_cells: float, n: int, center=(0, 0)) -> GridContinuum:
    r = int(math.ceil(radius_cells))
    cx, cy = center
    cells = [(cx + k, cy + l) for k in range(-r, r + 1) for l in range(-r, r + 1)
             if k * k + l * l <= radius_cells * radius_cells]
    return GridContinuum(n, frozenset(cells))


def block(k0: int, l0: int, k1: int, l1: int, n: int) -> GridContinuum:
    return GridContinuum(n, frozenset((k, l) for k in range(k0, k1 + 1) for l in range(l0, l1 + 1)))


def thick_segment(half_length: float, n: int) -> GridContinuum:
    """Single row of cells at ``y = 0`` covering ``[-L, L] x [-2**-(n+1), 2**-(n+1)]``."""
    k = int(round(half_length * 2 ** n))
    return GridContinuum(n, frozenset((i, 0) for i in range(-k, k + 1)))


def random_continuum(rng: np.random.Generator, n: int = 4, max_cells: int = 200, min_cells: int = 10) -> GridContinuum:
    """Random admissible blob grown by 4-adjacent accretion, holes filled."""
    for _ in range(100):
        target = int(rng.integers(min_cells, max(min_cells + 1, int(0.8 * max_cells))))
        cells = {(0, 0)}
        frontier = [(0, 0)]
        while len(cells) < target:
            k, l = frontier[int(rng.integers(len(frontier)))]
            dk, dl = ((1, 0), (-1, 0), (0, 1), (0, -1))[int(rng.integers(4))]
            c = (k + dk, l + dl)
            if c not in cells:
                cells.add(c)
                frontier.append(c)
        filled = fill_holes(Raster.from_cells(n, cells)).cells()
        if len(filled) <= max_cells:
            return GridContinuum(n, filled)
    raise RuntimeError("could not draw an admissible continuum within the cell cap")


BUILTINS = {
    "disc5": lambda: disc_cells(2.5, 2),
    "cell": lambda: GridContinuum(0, frozenset({(0, 0)})),
    "cross": lambda: GridContinuum(2, frozenset({(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)})),
    "segment": lambda: thick_segment(1.0, 4),
    "segment15": lambda: thick_segment(1.5, 4),
}


def parse_continuum(text: str, seed: int = 0) -> GridContinuum:
    """``builtin:<name>``, ``builtin:blob[:cells]``, ``builtin:segment:<L>[:n]`` or ``file:<path>``."""
    kind, _, rest = text.partition(":")
    if kind == "file":
        return read_grid(rest)
    if kind != "builtin":
        raise GridFormatError(f"unknown continuum source '{text}'")
    name, *params = rest.split(":")
    try:
        if name == "blob":
            cap = int(params[0]) if params else 200
            return random_continuum(np.random.default_rng(seed), n=4, max_cells=cap)
        if name == "segment" and params:
            return thick_segment(float(params[0]), int(params[1]) if len(params) > 1 else 4)
        if name == "disc" and params:
            return disc_cells(float(params[0]), int(params[1]) if len(params) > 1 else 2)
    except ValueError as exc:
        raise GridFormatError(f"bad builtin parameters in '{text}'") from exc
    if name not in BUILTINS or params:
        raise GridFormatError(f"unknown builtin continuum '{rest}' (known: {', '.join(sorted(BUILTINS))}, blob, segment:L, disc:R)")
    return BUILTINS[name]()

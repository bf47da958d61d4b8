"""Acceptance criteria 1 to 10, one PASS/FAIL line each.

Run with ``pytest -m acceptance -s`` to see the lines as they happen; they are
also repeated in the terminal summary.
"""
import functools
import itertools
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from conftest import star_curve
from criteria import criterion
from oracles import crossing_number_inside, dense_index, point_to_cells_distance, segments_share
from planefix.fixedpoint import (
    DEFAULT_PIPELINE,
    CutClass,
    CutRegion,
    certify_theorem_a,
    certify_theorem_d,
    classify_cut,
    two_fixed_points_scenario,
)
from planefix.geometry import PolyCurve, circle, rectangle
from planefix.grid import (
    BUILTINS,
    access_segments,
    block,
    boundary_sites,
    build_disc,
    disc_nested,
    max_boundary_distance,
    random_continuum,
)
from planefix.index import conjugation_invariance_check, index_along
from planefix.maps import (
    affine,
    bistable_flow,
    linear,
    pi_rotation,
    rotation,
    scaling,
    square_dipole,
    translation,
)

pytestmark = pytest.mark.acceptance

ORIGIN_TOL = 2.0 ** -10


def _ring_distance(p, vertices) -> float:
    v = np.asarray(vertices, dtype=float)
    a, b = v, np.roll(v, -1, axis=0)
    ab = b - a
    t = np.clip(((p - a) * ab).sum(1) / (ab * ab).sum(1), 0.0, 1.0)
    return float(np.hypot(*(a + t[:, None] * ab - p).T).min())


def _random_orientation_preserving(rng, lo=0.3, hi=1.8):
    while True:
        m = rng.normal(size=(2, 2))
        if np.linalg.det(m) < 0:
            m[:, 0] *= -1
        s = np.linalg.svd(m, compute_uv=False)
        if lo <= s[-1] and s[0] <= hi and abs(np.linalg.det(m - np.eye(2))) > 0.05:
            return m


def _random_curve(rng) -> PolyCurve:
    if rng.random() < 0.5:
        return circle(float(rng.uniform(0.3, 2.0)), int(rng.integers(8, 65)), tuple(rng.uniform(-1, 1, 2)))
    # lattice rectangle with dyadic corners
    x0, y0 = (rng.integers(-16, 8, 2) / 8).tolist()
    w, h = (rng.integers(2, 20, 2) / 8).tolist()
    return rectangle(x0, y0, x0 + w, y0 + h)


def test_criterion_1_index_laws():
    with criterion(1, "index laws on a 100-seed panel (integrality, reversal, conjugation)"):
        t0 = time.perf_counter()
        for seed in range(100):
            rng = np.random.default_rng(seed)
            while True:
                if seed % 5 == 4:
                    f, fixed = translation(*rng.uniform(-2, 2, 2)), None
                else:
                    a = _random_orientation_preserving(rng)
                    b = rng.uniform(-1, 1, 2)
                    f = affine(a, b)
                    fixed = np.linalg.solve(np.eye(2) - a, b)
                c = _random_curve(rng)
                if fixed is None or _ring_distance(fixed, c.vertices) > 0.05:
                    break
            cert = index_along(f, c)
            assert abs(cert.raw_turns - round(cert.raw_turns)) <= 1e-6
            expected = 0
            if fixed is not None and crossing_number_inside(fixed, c.vertices):
                expected = int(np.sign(np.linalg.det(f.affine[0] - np.eye(2))))
            assert cert.value == expected, (seed, f.id)
            assert index_along(f, c.reversed()).value == -cert.value
            g = affine(_random_orientation_preserving(rng), rng.uniform(-1, 1, 2))
            assert conjugation_invariance_check(f, g, c)
        elapsed = time.perf_counter() - t0
        assert elapsed < 10.0, f"panel took {elapsed:.1f} s"


def test_criterion_2_zero_and_one():
    with criterion(2, "translation gives 0 on small curves, inward contractions give 1"):
        rng = np.random.default_rng(2)
        shift = translation(3.0, 0.0)
        unit = circle(1.0, 64)
        assert index_along(shift, unit).value == 0
        for _ in range(20):
            c = star_curve(rng, n=int(rng.integers(5, 20)), center=tuple(rng.uniform(-3, 3, 2)),
                           rmin=0.1, rmax=0.45)
            diam = max(np.hypot(*(p - q)) for p, q in itertools.combinations(c.vertices, 2))
            assert diam < 1.0
            assert index_along(shift, c).value == 0
        assert index_along(scaling(0.5), unit).value == 1
        for _ in range(10):
            m = rng.normal(size=(2, 2))
            if np.linalg.det(m) < 0:
                m[:, 0] *= -1
            m *= rng.uniform(0.1, 0.8) / np.linalg.svd(m, compute_uv=False)[0]
            room = 0.95 - np.linalg.svd(m, compute_uv=False)[0]
            b = rng.normal(size=2)
            b *= rng.uniform(0, room) / np.hypot(*b)
            f = affine(m, b)
            assert np.hypot(*f.forward(unit.vertices).T).max() < 1.0
            assert index_along(f, unit).value == 1


def test_criterion_3_hyperbolic_oracle():
    with criterion(3, "diag(2, 1/2) gives -1, matching the dense oracle"):
        rng = np.random.default_rng(3)
        f = linear(2.0, 0.0, 0.0, 0.5)
        curves = [circle(1.0, 64), rectangle(-1.0, -0.5, 2.0, 1.5), circle(0.3, 7, (0.1, -0.05))]
        curves += [star_curve(rng, n=15, center=tuple(rng.uniform(-0.1, 0.1, 2)), rmin=0.3) for _ in range(3)]
        for c in curves:
            adaptive = index_along(f, c).value
            dense = dense_index(f.forward, c.vertices, samples=10 ** 6)
            assert adaptive == -1
            assert round(dense) == adaptive
            assert abs(dense - round(dense)) < 1e-6


def _distances_to_cells(points, g) -> np.ndarray:
    h = 2.0 ** -(g.n + 1)
    cells = np.array(sorted(g.cells), dtype=float)
    x0, x1 = (2 * cells[:, 0] - 1) * h, (2 * cells[:, 0] + 1) * h
    y0, y1 = (2 * cells[:, 1] - 1) * h, (2 * cells[:, 1] + 1) * h
    px, py = points[:, :1], points[:, 1:]
    dx = np.maximum(np.maximum(x0 - px, 0.0), px - x1)
    dy = np.maximum(np.maximum(y0 - py, 0.0), py - y1)
    return np.hypot(dx, dy).min(axis=1)


def test_criterion_4_nested_discs():
    with criterion(4, "nested disc approximations to depth 8 on 10 random continua"):
        t0 = time.perf_counter()
        for seed in range(10):
            rng = np.random.default_rng(400 + seed)
            g = random_continuum(rng, n=3, max_cells=200)
            assert len(g.cells) <= 200
            discs = [build_disc(g, m) for m in range(g.n, 9)]
            for a, b in zip(discs, discs[1:]):
                assert disc_nested(b, a), (seed, b.m)
            for d in discs:
                bound = math.sqrt(2.0) * 2.0 ** -d.m
                assert _distances_to_cells(d.boundary.vertices, g).max() <= bound + 1e-12
                assert max_boundary_distance(d) <= bound + 1e-12
            lo = np.array([min(k for k, _ in g.cells), min(l for _, l in g.cells)]) * 2.0 ** -g.n - 0.5
            hi = np.array([max(k for k, _ in g.cells), max(l for _, l in g.cells)]) * 2.0 ** -g.n + 0.5
            pts = rng.uniform(lo, hi, size=(2000, 2))
            pts = pts[_distances_to_cells(pts, g) >= 2.0 ** -4][:50]
            assert len(pts) == 50
            outside = np.zeros(len(pts), dtype=bool)
            for d in discs:
                outside |= ~d.contains(pts)
            assert outside.all(), f"{(~outside).sum()} external points never excluded"
        elapsed = time.perf_counter() - t0
        assert elapsed < 30.0, f"took {elapsed:.1f} s"


def test_criterion_5_access_segments():
    with criterion(5, "access segments meet in at most one point of the continuum"):
        violations = 0
        for seed in range(10):
            rng = np.random.default_rng(500 + seed)
            g = random_continuum(rng, n=3, max_cells=120)
            d = build_disc(g, g.n + 2)
            sites = boundary_sites(d, 50, rng)
            assert len(sites) == 50
            segs = access_segments(d, sites)
            for s, t in itertools.combinations(segs, 2):
                if s.degenerate or t.degenerate:
                    # a degenerate segment is a single point of the continuum
                    continue
                common = segments_share(s.b.as_tuple(), s.x_b.as_tuple(), t.b.as_tuple(), t.x_b.as_tuple())
                if len(common) > 1 or any(point_to_cells_distance(p, g.cells, g.n) > 1e-9 for p in common):
                    violations += 1
            for s in segs:
                assert point_to_cells_distance(s.x_b.as_tuple(), g.cells, g.n) <= 1e-12
        assert violations == 0


@functools.lru_cache(maxsize=None)
def _certify_runs():
    out = {}
    for name, h, g in (("rotation 1 rad, disc", rotation(1.0), BUILTINS["disc5"]()),
                       ("pi rotation, segment", pi_rotation(), BUILTINS["segment"]())):
        t0 = time.perf_counter()
        out[name] = (certify_theorem_a(h, g), time.perf_counter() - t0)
    return out


def test_criterion_6_end_to_end():
    with criterion(6, "end-to-end location near the origin for two invariant continua"):
        for name, (found, elapsed) in _certify_runs().items():
            p = found.result.point
            assert math.hypot(p.x, p.y) <= ORIGIN_TOL, name
            assert found.result.radius <= ORIGIN_TOL
            assert found.index.value == 1
            assert {c.value for c in found.result.certificate_chain} == {1}, name
            assert elapsed < 10.0, f"{name} took {elapsed:.1f} s"


def test_criterion_7_cut_classes():
    with criterion(7, "cut classes and index = 1 + expanding count"):
        g = BUILTINS["disc5"]()
        cut = CutRegion.build([(0.625, -0.25), (0.875, -0.25), (0.875, 0.25), (0.625, 0.25)], g)
        p = (0.625, 0.0)
        assert classify_cut(rotation(1.0), cut, g) is CutClass.DISJOINT
        assert classify_cut(scaling(0.5, p), cut, g) is CutClass.CONTRACTING
        assert classify_cut(scaling(2.0, p), cut, g) is CutClass.EXPANDING
        cfg = replace(DEFAULT_PIPELINE, witness_only=True)
        plain = certify_theorem_a(rotation(1.0), g, cfg)
        assert plain.clean and plain.consistent
        assert plain.expanding_count == 0 and plain.certificate.value == 1
        dipole = certify_theorem_a(square_dipole(), block(-2, -2, 2, 2, 2), cfg)
        assert dipole.clean and dipole.consistent
        counts = dipole.counts()
        assert counts["expanding"] == 1 and counts["contracting"] >= 1
        assert dipole.certificate.value == 2


@functools.lru_cache(maxsize=None)
def _cycle_run():
    return certify_theorem_d(pi_rotation(), [(1.0, 0.0), (-1.0, 0.0)])


def test_criterion_8_finite_invariant_set():
    with criterion(8, "fixed point from the 2-cycle of the pi rotation"):
        res = _cycle_run()
        assert math.hypot(res.point.x, res.point.y) <= ORIGIN_TOL


@functools.lru_cache(maxsize=None)
def _scenario_runs():
    seg = BUILTINS["segment15"]()
    flow = two_fixed_points_scenario(bistable_flow(), seg, replace(DEFAULT_PIPELINE, invariance="forward"),
                                     side_preserving=True)
    control = two_fixed_points_scenario(pi_rotation(), seg, side_preserving=False)
    return flow, control


def test_criterion_9_two_fixed_points():
    with criterion(9, "two fixed points for the bistable flow, one for the pi rotation control"):
        flow, control = _scenario_runs()
        targets = np.array([(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)])
        assert len(flow.points) >= 2
        for r in flow.points:
            assert np.hypot(*(targets - r.point.as_tuple()).T).min() <= 1e-3, r.point
        assert len(control.points) == 1


def test_criterion_10_subdivision_soundness():
    with criterion(10, "sub-indices sum to the parent at every non-jittered level"):
        results = [found.result for found, _ in _certify_runs().values()]
        results.append(_cycle_run())
        for scen in _scenario_runs():
            results.extend(scen.points)
        levels = [lv for r in results for lv in r.levels if not lv.jittered]
        assert levels, "no subdivision levels were recorded"
        bad = [lv for lv in levels if not lv.sound]
        assert not bad, bad[:3]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))

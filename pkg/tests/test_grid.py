import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planefix.errors import DepthLimitExceeded, GridFormatError, InadmissibleContinuum, NotADisc, SiteOffBoundary
from planefix.geometry import Orientation, Point2, curve_orientation, is_simple
from planefix.grid import (
    BUILTINS,
    AccessSegment,
    GridContinuum,
    Raster,
    access_segments,
    block,
    boundary_sites,
    build_disc,
    covering_raster,
    disc_nested,
    dumps,
    loads,
    max_boundary_distance,
    parse_continuum,
    random_continuum,
    read_grid,
    refine,
    trace_boundary,
    validate_continuum,
    write_grid,
)

from oracles import brute_cover, brute_fill, components4, enclosed_count, point_to_cells_distance, segments_share

SINGLE = GridContinuum(0, frozenset({(0, 0)}))
RING = GridContinuum(0, frozenset((k, l) for k in range(3) for l in range(3) if (k, l) != (1, 1)))
DIAGONAL = GridContinuum(0, frozenset({(0, 0), (1, 1)}))


def test_validation_examples():
    assert validate_continuum(SINGLE).admissible
    r = validate_continuum(RING)
    assert r.connected and not r.non_separating and r.enclosed_cells == 1
    r = validate_continuum(DIAGONAL)
    assert not r.connected and r.components == 2
    with pytest.raises(InadmissibleContinuum):
        build_disc(RING, 0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_validation_matches_scipy_labels(seed):
    rng = np.random.default_rng(seed)
    cells = {(int(k), int(l)) for k, l in rng.integers(0, 6, size=(rng.integers(1, 20), 2))}
    g = GridContinuum(3, frozenset(cells))
    r = validate_continuum(g)
    assert r.components == components4(cells)
    assert r.enclosed_cells == enclosed_count(cells)


def test_single_cell_disc():
    d = build_disc(SINGLE, 0)
    assert d.region == frozenset((k, l) for k in (-1, 0, 1) for l in (-1, 0, 1))
    x0, y0, x1, y1 = d.boundary.bbox()
    assert (x0, y0, x1, y1) == (-1.5, -1.5, 1.5, 1.5)
    assert abs(d.boundary.signed_area()) == 9.0
    assert curve_orientation(d.boundary) is Orientation.POSITIVE


def test_trace_examples():
    c = trace_boundary((0, {(0, 0)}))
    assert len(c) == 4 and curve_orientation(c) is Orientation.POSITIVE
    c = trace_boundary((0, {(0, 0), (1, 0)}))
    assert len(c) == 6 and curve_orientation(c) is Orientation.POSITIVE
    with pytest.raises(NotADisc):
        trace_boundary(Raster.from_cells(0, RING.cells, pad=1))


def test_c_shaped_pocket_stays_open():
    # a 7x7 ring with a 3-cell opening: dilation by one cell keeps the mouth open
    cells = {(k, l) for k in range(7) for l in range(7) if k in (0, 6) or l in (0, 6)}
    cells -= {(6, 2), (6, 3), (6, 4)}
    g = GridContinuum(0, frozenset(cells))
    assert validate_continuum(g).admissible
    d = build_disc(g, 0)
    q = covering_raster(g, 0).cells()
    assert d.region == q
    assert (3, 3) not in d.region
    assert d.region == brute_fill(brute_cover(cells, 0, 0))


def test_cover_matches_brute_force(rng):
    for _ in range(5):
        g = random_continuum(rng, n=2, max_cells=30, min_cells=5)
        for m in (2, 3, 4):
            assert covering_raster(g, m).cells() == brute_cover(g.cells, g.n, m)
            assert build_disc(g, m).region == brute_fill(brute_cover(g.cells, g.n, m))


def test_refine_examples():
    r = refine(SINGLE, 1)
    assert r.n == 1 and len(r.cells) == 9
    assert r.cells == brute_cover({(0, 0)}, 0, 1)
    assert refine(SINGLE, 0) == SINGLE
    assert refine(refine(SINGLE, 1), 3) == refine(SINGLE, 3)
    assert validate_continuum(refine(SINGLE, 2)).admissible
    with pytest.raises(DepthLimitExceeded):
        refine(SINGLE, 40)


def test_refine_keeps_point_set():
    g = BUILTINS["cross"]()
    r = refine(g, 4)
    probe = np.random.default_rng(5).uniform(-1, 1, size=(400, 2))
    assert np.array_equal(r.contains(probe), g.contains(probe))


def test_depth_limit():
    with pytest.raises(DepthLimitExceeded):
        build_disc(SINGLE, 25)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_nesting_proximity_and_shape(seed):
    rng = np.random.default_rng(seed)
    g = random_continuum(rng, n=3, max_cells=60)
    discs = [build_disc(g, m) for m in range(g.n, g.n + 4)]
    for a, b in zip(discs, discs[1:]):
        assert disc_nested(b, a)
    for d in discs:
        assert is_simple(d.boundary)
        assert curve_orientation(d.boundary) is Orientation.POSITIVE
        assert max_boundary_distance(d) <= math.sqrt(2) * 2.0 ** -d.m + 1e-12
        v = d.boundary.vertices
        assert np.array_equal(v * 2 ** (d.m + 1), np.round(v * 2 ** (d.m + 1)))


def test_nesting_detects_non_inclusion():
    a = build_disc(SINGLE, 1)
    b = build_disc(GridContinuum(0, frozenset({(3, 0)})), 2)
    assert not disc_nested(b, a)


def test_distance_matches_oracle(rng):
    g = random_continuum(rng, n=2, max_cells=40)
    pts = rng.uniform(-3, 3, size=(50, 2))
    got = g.distance(pts)
    want = [point_to_cells_distance(p, g.cells, g.n) for p in pts]
    assert np.allclose(got, want, atol=1e-12)


def test_shared_endpoint_at_single_touching_point():
    d = build_disc(SINGLE, 0)
    segs = access_segments(d, [(1.2, 1.5), (1.5, 1.2)])
    assert all(s.x_b == Point2(0.5, 0.5) for s in segs)
    common = segments_share(segs[0].b.as_tuple(), segs[0].x_b.as_tuple(), segs[1].b.as_tuple(), segs[1].x_b.as_tuple())
    assert len(common) == 1 and np.allclose(common[0], [0.5, 0.5])


def test_sites_in_different_cells_are_disjoint():
    d = build_disc(BUILTINS["disc5"](), 3)
    segs = access_segments(d, [d.boundary.vertices[0] * 0.5 + d.boundary.vertices[1] * 0.5,
                               d.boundary.vertices[10] * 0.5 + d.boundary.vertices[11] * 0.5])
    assert segs[0].cell != segs[1].cell
    assert segments_share(segs[0].b.as_tuple(), segs[0].x_b.as_tuple(), segs[1].b.as_tuple(), segs[1].x_b.as_tuple()) == []


def test_access_segment_invariants_and_errors(rng):
    g = random_continuum(rng, n=3, max_cells=50)
    d = build_disc(g, 5)
    sites = boundary_sites(d, 40, rng)
    for s in access_segments(d, sites):
        assert s.length < math.sqrt(2) * 2.0 ** -d.m
        assert g.distance(np.array([s.x_b.as_tuple()]))[0] == 0.0
        mid = np.array([[(s.b.x + s.x_b.x) / 2, (s.b.y + s.x_b.y) / 2]])
        assert d.contains(mid)[0]
    with pytest.raises(SiteOffBoundary):
        access_segments(d, [(100.0, 100.0)])


def test_degenerate_access_segment():
    s = AccessSegment(Point2(0.5, 0.5), Point2(0.5, 0.5), (0, 0))
    assert s.degenerate and s.length == 0.0 and s.segment is None


def test_file_round_trip(tmp_path, rng):
    g = random_continuum(rng, n=5, max_cells=80)
    p = tmp_path / "g.grid"
    write_grid(g, p)
    assert read_grid(p) == g
    assert loads(dumps(g)) == g
    assert parse_continuum(f"file:{p}") == g


@pytest.mark.parametrize("text, line", [
    ("k 3\n0 0\n", 1),
    ("n 2\n0 0\n1 x\n", 3),
    ("n 2\n0 0 0\n", 2),
    ("# only a comment\n", 1),
])
def test_file_errors_have_positions(text, line):
    with pytest.raises(GridFormatError) as exc:
        loads(text)
    assert exc.value.line == line


def test_file_comments_and_blank_lines():
    g = loads("# a blob\nn 1\n\n0 0  # origin\n1 0\n")
    assert g == block(0, 0, 1, 0, 1)


def test_builtins():
    assert len(BUILTINS["disc5"]().cells) == 21
    for name in BUILTINS:
        assert validate_continuum(BUILTINS[name]()).admissible
    assert parse_continuum("builtin:blob", seed=3) == parse_continuum("builtin:blob", seed=3)

"""Compiled and numpy kernels agree; the environment switch selects the fallback."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planefix import _kernels_py as pure
from planefix import kernels

try:
    from planefix import _kernels as compiled
except ImportError:  # pragma: no cover - exercised only without a build
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="extension not built")
f64 = np.ascontiguousarray


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 400))
def test_lift_turns_parity(seed, n):
    rng = np.random.default_rng(seed)
    dx, dy = f64(rng.normal(size=n)), f64(rng.normal(size=n))
    a, b = compiled.lift_turns(dx, dy), pure.lift_turns(dx, dy)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)


def test_lift_turns_circle():
    t = np.linspace(0, 4 * np.pi, 2001)
    turns, gap, low = kernels.lift_turns(np.cos(t), np.sin(t))
    assert turns == pytest.approx(2.0, abs=1e-12)
    assert gap == pytest.approx(4 * np.pi / 2000, rel=1e-9)
    assert low == pytest.approx(1.0)


@needs_compiled
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 40), st.integers(1, 40))
def test_flood4_parity(seed, r, c):
    rng = np.random.default_rng(seed)
    passable = np.ascontiguousarray(rng.random((r, c)) < 0.6, dtype=np.uint8)
    seeds = np.zeros_like(passable)
    seeds[0, :] = 1
    assert np.array_equal(compiled.flood4(passable, seeds), pure.flood4(passable, seeds))


def test_flood4_blocks_diagonal_steps():
    passable = np.array([[1, 0], [0, 1]], dtype=np.uint8)
    seeds = np.array([[1, 0], [0, 0]], dtype=np.uint8)
    assert kernels.flood4(passable, seeds).tolist() == [[True, False], [False, False]]


@needs_compiled
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(3, 30))
def test_points_in_polygon_parity(seed, n):
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(0, 2 * np.pi, n))
    r = rng.uniform(0.3, 1.0, n)
    vx, vy = f64(r * np.cos(t)), f64(r * np.sin(t))
    px, py = f64(rng.uniform(-1.2, 1.2, 300)), f64(rng.uniform(-1.2, 1.2, 300))
    pa, da = compiled.points_in_polygon(px, py, vx, vy)
    pb, db = pure.points_in_polygon(px, py, vx, vy)
    assert np.array_equal(np.asarray(pa, bool), np.asarray(pb, bool))
    assert np.allclose(da, db, rtol=1e-12, atol=1e-14)


def test_points_in_polygon_square():
    inside, dist = kernels.points_in_polygon([0.5, 2.0], [0.5, 0.5], [0, 1, 1, 0], [0, 0, 1, 1])
    assert inside.tolist() == [True, False]
    assert dist == pytest.approx([0.5, 1.0])


def test_pure_switch():
    env = dict(os.environ, PLANEFIX_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import planefix; print(planefix.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_compiled
def test_compiled_selected_by_default():
    assert kernels.BACKEND == "cython" or os.environ.get("PLANEFIX_PURE")

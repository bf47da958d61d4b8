"""Kernel dispatch: the compiled extension when built, else the numpy fallback.

Set ``PLANEFIX_PURE=1`` in the environment to force the fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("PLANEFIX_PURE"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def _u8(a):
    return np.ascontiguousarray(a, dtype=np.uint8)


def lift_turns(dx, dy):
    """Net turns of a sampled vector sequence: ``(turns, max_abs_gap, min_norm)``."""
    return _impl.lift_turns(_f64(dx), _f64(dy))


def flood4(passable, seeds):
    """Boolean mask of passable cells 4-connected to a seed."""
    return _impl.flood4(_u8(passable), _u8(seeds)).astype(bool)


def points_in_polygon(px, py, vx, vy):
    """Crossing parity (bool) and distance to the ring for each point."""
    parity, dist = _impl.points_in_polygon(_f64(px), _f64(py), _f64(vx), _f64(vy))
    return np.asarray(parity, dtype=bool), np.asarray(dist)


__all__ = ["BACKEND", "lift_turns", "flood4", "points_in_polygon"]

"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""
from collections import deque

import numpy as np


def lift_turns(dx, dy):
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    if dx.size == 0:
        return 0.0, 0.0, float("inf")
    ang = np.arctan2(dy, dx)
    gaps = np.diff(ang)
    gaps = (gaps + np.pi) % (2 * np.pi) - np.pi
    # fold the -pi representative onto +pi, as the compiled loop does
    gaps[gaps == -np.pi] = np.pi
    biggest = float(np.abs(gaps).max()) if gaps.size else 0.0
    smallest = float(np.hypot(dx, dy).min())
    return float(gaps.sum() / (2 * np.pi)), biggest, smallest


def flood4(passable, seeds):
    passable = np.asarray(passable, dtype=bool)
    nx, ny = passable.shape
    out = np.zeros((nx, ny), dtype=np.uint8)
    queue = deque()
    for i, j in zip(*np.nonzero(np.asarray(seeds, dtype=bool) & passable)):
        out[i, j] = 1
        queue.append((int(i), int(j)))
    while queue:
        i, j = queue.popleft()
        for a, b in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
            if 0 <= a < nx and 0 <= b < ny and passable[a, b] and not out[a, b]:
                out[a, b] = 1
                queue.append((a, b))
    return out


def points_in_polygon(px, py, vx, vy):
    px = np.asarray(px, dtype=float)[:, None]
    py = np.asarray(py, dtype=float)[:, None]
    ax = np.asarray(vx, dtype=float)[None, :]
    ay = np.asarray(vy, dtype=float)[None, :]
    bx = np.roll(ax, -1, axis=1)
    by = np.roll(ay, -1, axis=1)
    straddle = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xcross = ax + (py - ay) * (bx - ax) / (by - ay)
    parity = (np.count_nonzero(straddle & (px < xcross), axis=1) % 2).astype(np.uint8)
    ex, ey = bx - ax, by - ay
    ll = ex * ex + ey * ey
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(ll > 0, ((px - ax) * ex + (py - ay) * ey) / ll, 0.0)
    t = np.clip(t, 0.0, 1.0)
    dist = np.hypot(ax + t * ex - px, ay + t * ey - py).min(axis=1)
    return parity, dist

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror :mod:`planefix._kernels_py`."""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, sqrt, fabs, M_PI

cnp.import_array()


def lift_turns(const double[::1] dx, const double[::1] dy):
    """Sum wrapped angle increments of the vector sequence (dx, dy).

    Returns ``(turns, max_abs_gap, min_norm)``.
    """
    cdef Py_ssize_t n = dx.shape[0], i
    cdef double total = 0.0, gap, prev, cur, biggest = 0.0, norm, smallest
    if n == 0:
        return 0.0, 0.0, float("inf")
    prev = atan2(dy[0], dx[0])
    smallest = sqrt(dx[0] * dx[0] + dy[0] * dy[0])
    for i in range(1, n):
        cur = atan2(dy[i], dx[i])
        gap = cur - prev
        while gap > M_PI:
            gap -= 2.0 * M_PI
        while gap <= -M_PI:
            gap += 2.0 * M_PI
        total += gap
        if fabs(gap) > biggest:
            biggest = fabs(gap)
        norm = sqrt(dx[i] * dx[i] + dy[i] * dy[i])
        if norm < smallest:
            smallest = norm
        prev = cur
    return total / (2.0 * M_PI), biggest, smallest


def flood4(const unsigned char[:, ::1] passable, const unsigned char[:, ::1] seeds):
    """Cells of ``passable`` 4-connected to some seed cell (seeds must be passable)."""
    cdef Py_ssize_t nx = passable.shape[0], ny = passable.shape[1]
    out_arr = np.zeros((nx, ny), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    cdef Py_ssize_t cap = nx * ny + 1
    stack_arr = np.empty(cap, dtype=np.intp)
    cdef Py_ssize_t[::1] stack = stack_arr
    cdef Py_ssize_t top = 0, i, j, c
    for i in range(nx):
        for j in range(ny):
            if seeds[i, j] and passable[i, j] and not out[i, j]:
                out[i, j] = 1
                stack[top] = i * ny + j
                top += 1
    while top > 0:
        top -= 1
        c = stack[top]
        i = c // ny
        j = c - i * ny
        if i > 0 and passable[i - 1, j] and not out[i - 1, j]:
            out[i - 1, j] = 1
            stack[top] = c - ny
            top += 1
        if i < nx - 1 and passable[i + 1, j] and not out[i + 1, j]:
            out[i + 1, j] = 1
            stack[top] = c + ny
            top += 1
        if j > 0 and passable[i, j - 1] and not out[i, j - 1]:
            out[i, j - 1] = 1
            stack[top] = c - 1
            top += 1
        if j < ny - 1 and passable[i, j + 1] and not out[i, j + 1]:
            out[i, j + 1] = 1
            stack[top] = c + 1
            top += 1
    return out_arr


def points_in_polygon(const double[::1] px, const double[::1] py,
                      const double[::1] vx, const double[::1] vy):
    """Crossing parity and boundary distance of each point against a closed ring.

    The ring is given once (closure implicit). Returns ``(parity, distance)``.
    """
    cdef Py_ssize_t n = px.shape[0], m = vx.shape[0], i, k, k2
    parity_arr = np.zeros(n, dtype=np.uint8)
    dist_arr = np.empty(n, dtype=np.float64)
    cdef unsigned char[::1] parity = parity_arr
    cdef double[::1] dist = dist_arr
    cdef double x, y, ax, ay, bx, by, ex, ey, t, qx, qy, d2, best, ll
    cdef unsigned char inside
    for i in range(n):
        x = px[i]
        y = py[i]
        inside = 0
        best = 1e300
        for k in range(m):
            k2 = k + 1
            if k2 == m:
                k2 = 0
            ax = vx[k]
            ay = vy[k]
            bx = vx[k2]
            by = vy[k2]
            if (ay > y) != (by > y):
                if x < ax + (y - ay) * (bx - ax) / (by - ay):
                    inside ^= 1
            ex = bx - ax
            ey = by - ay
            ll = ex * ex + ey * ey
            t = 0.0
            if ll > 0.0:
                t = ((x - ax) * ex + (y - ay) * ey) / ll
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            qx = ax + t * ex - x
            qy = ay + t * ey - y
            d2 = qx * qx + qy * qy
            if d2 < best:
                best = d2
        parity[i] = inside
        dist[i] = sqrt(best)
    return parity_arr, dist_arr

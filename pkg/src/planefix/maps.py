"""Catalog of orientation-preserving plane homeomorphisms with inverses.

Every map is vectorised: it takes an ``(N, 2)`` array and returns one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import CatalogError

TAU_INV = 1e-9

ArrayMap = Callable[[np.ndarray], np.ndarray]


def _pts(p) -> np.ndarray:
    return np.asarray(p, dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class PlaneMap:
    id: str
    forward: ArrayMap
    inverse: ArrayMap
    orientation_preserving: bool = True
    lipschitz: Optional[float] = None
    # 2x2 matrix and offset when the map is affine
    affine: Optional[tuple] = field(default=None, compare=False)

    def __call__(self, p) -> np.ndarray:
        arr = np.asarray(p, dtype=float)
        out = self.forward(arr.reshape(-1, 2))
        return out.reshape(arr.shape)

    def inv(self, p) -> np.ndarray:
        arr = np.asarray(p, dtype=float)
        return self.inverse(arr.reshape(-1, 2)).reshape(arr.shape)

    def inverted(self) -> PlaneMap:
        aff = None
        if self.affine is not None:
            m, b = self.affine
            mi = np.linalg.inv(m)
            aff = (mi, -mi @ b)
        lip = None
        if self.affine is not None:
            lip = float(np.linalg.norm(aff[0], 2))
        return PlaneMap(f"inv({self.id})", self.inverse, self.forward, self.orientation_preserving, lip, aff)

    def inverse_error(self, points) -> float:
        p = _pts(points)
        return float(np.max(np.hypot(*(self.inverse(self.forward(p)) - p).T)))

    def jacobian_dets(self, points, step: float = 1e-6) -> np.ndarray:
        """Central finite-difference Jacobian determinants."""
        p = _pts(points)
        ex = np.array([step, 0.0])
        ey = np.array([0.0, step])
        dfx = (self.forward(p + ex) - self.forward(p - ex)) / (2 * step)
        dfy = (self.forward(p + ey) - self.forward(p - ey)) / (2 * step)
        return dfx[:, 0] * dfy[:, 1] - dfx[:, 1] * dfy[:, 0]

    def spot_check(self, rng: np.random.Generator, n: int = 100, scale: float = 2.0,
                   tau_inv: float = TAU_INV) -> tuple[float, float]:
        """Inverse round-trip error and minimum Jacobian determinant on random points."""
        p = rng.uniform(-scale, scale, size=(n, 2))
        return self.inverse_error(p), float(self.jacobian_dets(p).min())


def affine(matrix, offset=(0.0, 0.0), name: Optional[str] = None) -> PlaneMap:
    m = np.array(matrix, dtype=float).reshape(2, 2)
    b = np.array(offset, dtype=float).reshape(2)
    det = float(np.linalg.det(m))
    if not det > 0:
        raise CatalogError(f"linear part must have positive determinant, got {det:.6g}")
    mi = np.linalg.inv(m)

    def fwd(p):
        return p @ m.T + b

    def bwd(p):
        return (p - b) @ mi.T

    if name is None:
        name = "affine:" + ":".join(f"{v:g}" for v in (*m.ravel(), *b))
    return PlaneMap(name, fwd, bwd, True, float(np.linalg.norm(m, 2)), (m, b))


def rotation(angle: float, center=(0.0, 0.0)) -> PlaneMap:
    c, s = math.cos(angle), math.sin(angle)
    m = np.array([[c, -s], [s, c]])
    ctr = np.asarray(center, dtype=float)
    return affine(m, ctr - m @ ctr, name=f"rot:{angle:g}:{ctr[0]:g}:{ctr[1]:g}")


def pi_rotation(center=(0.0, 0.0)) -> PlaneMap:
    """Rotation by pi written exactly as ``x -> 2c - x``."""
    ctr = np.asarray(center, dtype=float)

    def fwd(p):
        return 2 * ctr - p

    return PlaneMap(f"rot:pi:{ctr[0]:g}:{ctr[1]:g}", fwd, fwd, True, 1.0, (-np.eye(2), 2 * ctr))


def translation(dx: float, dy: float) -> PlaneMap:
    return affine(np.eye(2), (dx, dy), name=f"translate:{dx:g}:{dy:g}")


def scaling(factor: float, center=(0.0, 0.0)) -> PlaneMap:
    if not factor > 0:
        raise CatalogError("scale factor must be positive")
    ctr = np.asarray(center, dtype=float)
    return affine(factor * np.eye(2), (1 - factor) * ctr, name=f"scale:{factor:g}:{ctr[0]:g}:{ctr[1]:g}")


def linear(a: float, b: float, c: float, d: float) -> PlaneMap:
    return affine([[a, b], [c, d]], name=f"linear:{a:g}:{b:g}:{c:g}:{d:g}")


def identity() -> PlaneMap:
    return affine(np.eye(2), name="identity")


def compose(*maps: PlaneMap) -> PlaneMap:
    """``compose(f, g)`` is ``f o g`` (``g`` applied first)."""
    if not maps:
        return identity()

    def fwd(p):
        for m in reversed(maps):
            p = m.forward(p)
        return p

    def bwd(p):
        for m in maps:
            p = m.inverse(p)
        return p

    lip = None
    if all(m.lipschitz is not None for m in maps):
        lip = float(np.prod([m.lipschitz for m in maps]))
    aff = None
    if all(m.affine is not None for m in maps):
        mm, bb = np.eye(2), np.zeros(2)
        for m in reversed(maps):
            a, b = m.affine
            mm, bb = a @ mm, a @ bb + b
        aff = (mm, bb)
    return PlaneMap("(" + "|".join(m.id for m in maps) + ")", fwd, bwd,
                    all(m.orientation_preserving for m in maps), lip, aff)


def conjugate(f: PlaneMap, g: PlaneMap) -> PlaneMap:
    """``g o f o g^-1``."""
    m = compose(g, f, g.inverted())
    return PlaneMap(f"conj({f.id},{g.id})", m.forward, m.inverse, m.orientation_preserving, None, m.affine)


def rk4_flow(field_fn, time: float = 1.0, step: float = 1e-3, name: str = "flow") -> PlaneMap:
    """Time-``time`` map of an autonomous planar ODE by fixed-step RK4.

    The inverse integrates backwards with the same step, so the round trip
    carries the method's truncation error (well under ``TAU_INV`` at the
    default step for the catalog fields).
    """
    nsteps = int(round(abs(time) / step))

    def integrate(p, h):
        y = np.array(p, dtype=float)
        for _ in range(nsteps):
            k1 = field_fn(y)
            k2 = field_fn(y + 0.5 * h * k1)
            k3 = field_fn(y + 0.5 * h * k2)
            k4 = field_fn(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        return y

    h = math.copysign(step, time)
    return PlaneMap(name, lambda p: integrate(p, h), lambda p: integrate(p, -h), True)


def bistable_field(p: np.ndarray) -> np.ndarray:
    """``x' = x(1 - x^2), y' = -y``: sinks at (+-1, 0), saddle at the origin."""
    x, y = p[:, 0], p[:, 1]
    return np.stack([x * (1 - x * x), -y], axis=1)


def bistable_flow(time: float = 1.0, step: float = 1e-3) -> PlaneMap:
    return rk4_flow(bistable_field, time, step, name=f"flow:bistable:{time:g}")


def segment_fixing(rate: float = 0.1, half_length: float = 1.0) -> PlaneMap:
    """Homeomorphism whose fixed set is exactly ``[-L, L] x {0}``.

    ``(x, y) -> (x + rate * s(x), (1 + rate) * y)`` with ``s(x) = sign(x) max(|x| - L, 0)``.
    """
    if not rate > 0:
        raise CatalogError("rate must be positive")
    L = half_length

    def fwd(p):
        x, y = p[:, 0], p[:, 1]
        s = np.sign(x) * np.maximum(np.abs(x) - L, 0.0)
        return np.stack([x + rate * s, (1 + rate) * y], axis=1)

    def bwd(p):
        x, y = p[:, 0], p[:, 1]
        # |x| > L maps to |x| > L, where x' = x + rate(x - L sign x)
        s = np.where(np.abs(x) > L, np.sign(x) * (np.abs(x) - L) / (1 + rate), 0.0)
        return np.stack([x - rate * s, y / (1 + rate)], axis=1)

    return PlaneMap(f"segfix:{rate:g}:{L:g}", fwd, bwd, True, 1 + rate)


def _square_dir(theta: np.ndarray) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    m = np.maximum(np.abs(c), np.abs(s))
    return np.stack([c / m, s / m], axis=1)


def square_dipole(half_width: float = 0.625, pull: float = 0.5, strength: float = 8.0) -> PlaneMap:
    """Map keeping every square ``|p|_inf = const`` centred at the origin in place as a set.

    In square-polar coordinates ``p = r * w * S(theta)`` (``w`` the half-width,
    ``S`` the unit square direction) it sends ``(r, theta)`` to
    ``(r ** e(theta), theta - pull * sin(theta))`` with
    ``e(theta) = strength ** -cos(theta)``. The square of half-width ``w`` is
    invariant, ``(w, 0)`` is a sink, ``(-w, 0)`` a source, and the origin is
    the only other fixed point.
    """
    if not (0 < pull < 1 and strength > 1 and half_width > 0):
        raise CatalogError("dipole needs 0 < pull < 1, strength > 1, half_width > 0")
    w = float(half_width)

    def split(p):
        r = np.max(np.abs(p), axis=1) / w
        th = np.arctan2(p[:, 1], p[:, 0])
        return r, th

    def fwd(p):
        r, th = split(p)
        e = strength ** -np.cos(th)
        with np.errstate(divide="ignore"):
            out = (r ** e)[:, None] * w * _square_dir(th - pull * np.sin(th))
        out[r == 0] = 0.0
        return out

    def bwd(p):
        r, ph = split(p)
        th = ph.copy()
        for _ in range(60):
            # Newton on theta - pull*sin(theta) = phi (derivative >= 1 - pull)
            step = (th - pull * np.sin(th) - ph) / (1 - pull * np.cos(th))
            th -= step
            if np.all(np.abs(step) < 1e-15):
                break
        e = strength ** -np.cos(th)
        with np.errstate(divide="ignore"):
            out = (r ** (1 / e))[:, None] * w * _square_dir(th)
        out[r == 0] = 0.0
        return out

    return PlaneMap(f"dipole:{w:g}:{pull:g}:{strength:g}", fwd, bwd, True)


def _floats(parts, n_min, n_max, text):
    if not (n_min <= len(parts) <= n_max):
        raise CatalogError(f"map '{text}': expected {n_min}..{n_max} parameters, got {len(parts)}")
    out = []
    for s in parts:
        s = s.strip()
        try:
            if s in ("pi", "+pi"):
                out.append(math.pi)
            elif s == "-pi":
                out.append(-math.pi)
            elif "pi" in s:
                # forms like 2pi/3 or pi/2
                num, _, den = s.partition("/")
                coef = num.replace("pi", "") or "1"
                coef = -1.0 if coef == "-" else float(coef)
                out.append(coef * math.pi / (float(den) if den else 1.0))
            else:
                out.append(float(s))
        except ValueError as exc:
            raise CatalogError(f"map '{text}': bad number '{s}'") from exc
    return out


def parse_map(text: str) -> PlaneMap:
    """Resolve a catalog string such as ``rot:pi``, ``scale:0.5`` or ``a|b``.

    Forms: ``rot:<angle>[:cx:cy]``, ``translate:dx:dy``, ``scale:s[:cx:cy]``,
    ``linear:a:b:c:d``, ``diag:a:d``, ``flow:bistable[:time]``,
    ``segfix[:rate[:L]]``, ``dipole[:w[:pull[:strength]]]``, ``identity``; ``f|g`` composes (``g`` first).
    """
    text = text.strip()
    if "|" in text:
        return compose(*(parse_map(s) for s in text.split("|")))
    name, *parts = text.split(":")
    if name == "rot":
        if not parts:
            raise CatalogError("rot needs an angle")
        if parts[0].strip() == "pi" and len(parts) in (1, 3):
            ctr = _floats(parts[1:], 0, 2, text) if len(parts) == 3 else [0.0, 0.0]
            return pi_rotation(ctr)
        v = _floats(parts, 1, 3, text)
        if len(v) == 2:
            raise CatalogError("rot center needs two coordinates")
        return rotation(v[0], v[1:] if len(v) == 3 else (0.0, 0.0))
    if name == "translate":
        return translation(*_floats(parts, 2, 2, text))
    if name == "scale":
        v = _floats(parts, 1, 3, text)
        if len(v) == 2:
            raise CatalogError("scale center needs two coordinates")
        return scaling(v[0], v[1:] if len(v) == 3 else (0.0, 0.0))
    if name == "linear":
        return linear(*_floats(parts, 4, 4, text))
    if name == "diag":
        a, d = _floats(parts, 2, 2, text)
        return linear(a, 0.0, 0.0, d)
    if name == "flow":
        if not parts or parts[0] != "bistable":
            raise CatalogError(f"unknown flow '{text}' (known: flow:bistable)")
        t = _floats(parts[1:], 0, 1, text)
        return bistable_flow(t[0] if t else 1.0)
    if name == "segfix":
        v = _floats(parts, 0, 2, text)
        return segment_fixing(*v)
    if name == "dipole":
        return square_dipole(*_floats(parts, 0, 3, text))
    if name == "identity":
        return identity()
    raise CatalogError(f"unknown map '{text}'")

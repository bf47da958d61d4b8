"""Plain-data reports for every pipeline, plus their text and JSON renderings.

A report is a nested dict of builtins. Indices are ints, coordinates are
floats rounded to 12 significant digits, and key order is fixed, so equal
inputs give byte-identical output. An optional ``geometry`` entry carries
what the SVG renderer draws.
"""
from __future__ import annotations

import json
import math
from typing import Iterable, Optional

import numpy as np

from .fixedpoint import FixedPointFound, FixedPointResult, IndexWitness, InvarianceReport, ScenarioResult
from .geometry import PolyCurve
from .grid import DiscApproximation, GridContinuum, ValidationReport
from .index import IndexCertificate

SIG_DIGITS = 12


def _r(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        return x
    return float(f"{x:.{SIG_DIGITS}g}")


def _pt(p) -> list:
    x, y = p
    return [_r(x), _r(y)]


def _curve(c: PolyCurve) -> list:
    return [_pt(v) for v in c.vertices]


def clean(obj):
    """Round floats, turn numpy scalars and tuples into builtins."""
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _r(obj)
    return obj


def geometry(continuum: Optional[GridContinuum] = None, boundaries: Iterable[PolyCurve] = (),
             segments: Iterable = (), points: Iterable = (), curves: Iterable[PolyCurve] = ()) -> dict:
    out: dict = {}
    if continuum is not None:
        out["level"] = continuum.n
        out["cells"] = sorted([list(c) for c in continuum.cells])
    b = [_curve(c) for c in boundaries]
    if b:
        out["boundaries"] = b
    cv = [_curve(c) for c in curves]
    if cv:
        out["curves"] = cv
    s = [[_pt(a), _pt(b)] for a, b in segments]
    if s:
        out["segments"] = s
    p = [_pt(q) for q in points]
    if p:
        out["points"] = p
    return out


def certificate(cert: IndexCertificate) -> dict:
    d = cert.to_dict()
    return clean(d)


def fixed_point(res: FixedPointResult) -> dict:
    return clean({
        "point": _pt((res.point.x, res.point.y)),
        "radius": res.radius,
        "displacement": res.displacement,
        "witnessed": res.witnessed,
        "certificate_chain": [c.value for c in res.certificate_chain],
        "levels": [lv.to_dict() for lv in res.levels],
    })


def index_report(cert: IndexCertificate, curve_text: str) -> dict:
    c = cert.curve
    rep = {"pipeline": "index", "status": "ok", "map": cert.map_id, "curve": curve_text,
           "index": certificate(cert)["index"], "certificate": certificate(cert)}
    if c is not None:
        rep["geometry"] = geometry(curves=[c])
    return clean(rep)


def approximation_report(g: GridContinuum, validation: ValidationReport, discs: list[DiscApproximation],
                         nesting: list[bool], distances: list[float]) -> dict:
    rows = []
    for d, nest, dist in zip(discs, nesting, distances):
        rows.append({
            "m": d.m,
            "cells": d.raster.count,
            "boundary_vertices": len(d.boundary),
            "max_vertex_distance": dist,
            "distance_bound": math.sqrt(2.0) * 2.0 ** -d.m,
            "nested_in_previous": nest,
        })
    rep = {
        "pipeline": "approximate",
        "status": "ok" if all(nesting) else "failed",
        "continuum": validation.to_dict(),
        "discs": rows,
        "nesting_verified": all(nesting),
        "geometry": geometry(g, boundaries=[d.boundary for d in discs]),
    }
    return clean(rep)


def _invariance(rep: Optional[InvarianceReport]):
    return None if rep is None else rep.to_dict()


def certification_report(g: GridContinuum, map_id: str, outcome) -> dict:
    if isinstance(outcome, FixedPointFound):
        fp = fixed_point(outcome.result)
        rep = {
            "pipeline": "certify",
            "status": "ok",
            "outcome": "fixed_point",
            "map": map_id,
            "invariance": _invariance(outcome.invariance),
            "disc_level": outcome.disc.m,
            "index": outcome.index.value,
            "certificate": certificate(outcome.index),
            "fixed_point": fp,
            "geometry": geometry(g, boundaries=[outcome.disc.boundary], points=[fp["point"]]),
        }
    elif isinstance(outcome, IndexWitness):
        rep = {
            "pipeline": "certify",
            "status": "ok" if (not outcome.clean or outcome.consistent) else "failed",
            "outcome": "index_witness",
            "map": map_id,
            "invariance": _invariance(outcome.invariance),
            "disc_level": outcome.disc.m,
            "index": outcome.certificate.value,
            "certificate": certificate(outcome.certificate),
            "epsilon": outcome.epsilon,
            "cuts": outcome.counts(),
            "expanding_count": outcome.expanding_count,
            "all_cuts_clean": outcome.clean,
            "consistent": outcome.consistent,
            "geometry": geometry(g, boundaries=[outcome.disc.boundary],
                                 segments=[((a.b.x, a.b.y), (a.x_b.x, a.x_b.y)) for a in outcome.access]),
        }
    else:
        raise TypeError(f"unexpected outcome {type(outcome).__name__}")
    return clean(rep)


def locate_report(res: FixedPointResult, map_id: str, curve: PolyCurve, curve_text: str) -> dict:
    fp = fixed_point(res)
    return clean({
        "pipeline": "locate",
        "status": "ok",
        "map": map_id,
        "curve": curve_text,
        "fixed_point": fp,
        "geometry": geometry(curves=[curve], points=[fp["point"]]),
    })


def theorem_d_report(res: FixedPointResult, map_id: str, invariant_set) -> dict:
    fp = fixed_point(res)
    pts = [_pt(p) for p in invariant_set]
    return clean({
        "pipeline": "theorem_d",
        "status": "ok",
        "map": map_id,
        "invariant_set": pts,
        "fixed_point": fp,
        "geometry": geometry(points=[fp["point"], *pts]),
    })


def theorem_c_report(scen: ScenarioResult, g: GridContinuum, map_id: str) -> dict:
    fps = [fixed_point(r) for r in scen.points]
    return clean({
        "pipeline": "theorem_c",
        "status": "ok",
        "map": map_id,
        "side_preserving": scen.side_preserving,
        "count": len(fps),
        "fixed_points": fps,
        "geometry": geometry(g, boundaries=[scen.first.disc.boundary], points=[f["point"] for f in fps]),
    })


def failure_report(pipeline: str, error: BaseException) -> dict:
    return {"pipeline": pipeline, "status": "failed", "error": type(error).__name__, "message": str(error)}


def to_json(report: dict) -> str:
    return json.dumps(clean(report), indent=2, allow_nan=True) + "\n"


def _lines(obj, prefix: str = "") -> list[str]:
    out = []
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.extend(_lines(v, key + "."))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                out.extend(_lines(item, f"{key}[{i}]."))
        else:
            out.append(f"{key}: {json.dumps(v)}")
    return out


def to_text(report: dict) -> str:
    """One ``key: value`` line per leaf; the bulky geometry section is summarised."""
    body = {k: v for k, v in clean(report).items() if k != "geometry"}
    lines = _lines(body)
    geo = report.get("geometry")
    if geo:
        parts = [f"{k}={len(v)}" for k, v in geo.items() if isinstance(v, list)]
        lines.append("geometry: " + " ".join(parts))
    return "\n".join(lines) + "\n"

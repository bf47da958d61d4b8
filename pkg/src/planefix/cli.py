"""Command-line front end.

Exit status: 0 on success, 2 when a certification step fails (no fixed
point located, index search exhausted and the like), 1 on bad input.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from typing import Optional, Sequence

import numpy as np

from . import __version__
from . import report as rp
from .errors import CatalogError, GridFormatError, InadmissibleContinuum, NotInvariant, PlanefixError, PreconditionError
from .fixedpoint import (
    DEFAULT_PIPELINE,
    certify_theorem_a,
    certify_theorem_d,
    locate_by_subdivision,
    two_fixed_points_scenario,
)
from .geometry import PolyCurve, circle, rectangle
from .grid import build_disc, disc_nested, max_boundary_distance, parse_continuum, validate_continuum
from .index import index_along
from .maps import PlaneMap, parse_map
from .svg import emit_svg

INPUT_ERRORS = (CatalogError, GridFormatError, InadmissibleContinuum, NotInvariant, PreconditionError,
                OSError, ValueError)

# catalog families declared to keep the two sides of a thin continuum (scenario flag)
SIDE_PRESERVING = ("flow:", "segfix", "identity", "dipole")


def parse_radius(text: str) -> float:
    """``2^-20``, ``2**-20`` or a plain positive number."""
    t = text.strip().replace("**", "^")
    try:
        if "^" in t:
            base, exp = t.split("^", 1)
            value = float(base) ** float(exp)
        else:
            value = float(t)
    except ValueError as exc:
        raise ValueError(f"bad radius '{text}'") from exc
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"radius must be positive, got '{text}'")
    return value


def parse_curve(text: str) -> PolyCurve:
    """``circle:r:N[:cx:cy]``, ``square:h[:cx:cy]`` (half-side ``h``) or ``rect:x0:y0:x1:y1``."""
    kind, *parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"curve '{text}': bad number") from exc
    if kind == "circle" and len(vals) in (2, 4):
        n = int(vals[1])
        if vals[0] <= 0 or n < 3 or n != vals[1]:
            raise ValueError(f"curve '{text}': need radius > 0 and an integer vertex count >= 3")
        ctr = tuple(vals[2:]) if len(vals) == 4 else (0.0, 0.0)
        return circle(vals[0], n, ctr)
    if kind == "square" and len(vals) in (1, 3):
        h = vals[0]
        cx, cy = vals[1:] if len(vals) == 3 else (0.0, 0.0)
        if h <= 0:
            raise ValueError(f"curve '{text}': half-side must be positive")
        return rectangle(cx - h, cy - h, cx + h, cy + h)
    if kind == "rect" and len(vals) == 4:
        x0, y0, x1, y1 = vals
        if not (x1 > x0 and y1 > y0):
            raise ValueError(f"curve '{text}': need x0 < x1 and y0 < y1")
        return rectangle(x0, y0, x1, y1)
    raise ValueError(f"unknown curve '{text}' (circle:r:N[:cx:cy], square:h[:cx:cy], rect:x0:y0:x1:y1)")


def parse_points(text: str) -> list[tuple[float, float]]:
    """``x,y;x,y;...``"""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            x, y = (float(v) for v in chunk.split(","))
        except ValueError as exc:
            raise ValueError(f"bad point '{chunk}' (expected x,y)") from exc
        out.append((x, y))
    return out


def _config(args, h: Optional[PlaneMap] = None):
    cfg = DEFAULT_PIPELINE
    if getattr(args, "radius", None):
        cfg = replace(cfg, radius=parse_radius(args.radius))
    if getattr(args, "depth_limit", None) is not None:
        cfg = replace(cfg, depth_limit=args.depth_limit)
    mode = getattr(args, "invariance", None)
    if mode == "auto" or (mode is None and h is not None):
        # backward time-1 flow maps blow up off the continuum, so only the forward image is checked
        mode = "forward" if h is not None and h.id.startswith("flow:") else "strict"
    if mode:
        cfg = replace(cfg, invariance=mode)
    if getattr(args, "search_radius", None) is not None:
        cfg = replace(cfg, search_radius=args.search_radius)
    return cfg


def cmd_index(args) -> dict:
    h = parse_map(args.map)
    c = parse_curve(args.curve)
    cert = index_along(h, c)
    return rp.index_report(cert, args.curve)


def cmd_approximate(args) -> dict:
    g = parse_continuum(args.continuum, args.seed)
    val = validate_continuum(g)
    if not val.admissible:
        raise InadmissibleContinuum(f"continuum is not admissible: {val.to_dict()}")
    top = args.depth if args.depth is not None else g.n + 4
    if top < g.n:
        raise ValueError(f"--depth {top} is below the continuum level {g.n}")
    discs = [build_disc(g, m, check=False) for m in range(g.n, top + 1)]
    nesting = [True] + [disc_nested(b, a) for a, b in zip(discs, discs[1:])]
    dists = [max_boundary_distance(d) for d in discs]
    return rp.approximation_report(g, val, discs, nesting, dists)


def cmd_certify(args) -> dict:
    h = parse_map(args.map)
    g = parse_continuum(args.continuum, args.seed)
    cfg = replace(_config(args, h), witness_only=args.witness)
    return rp.certification_report(g, h.id, certify_theorem_a(h, g, cfg))


def cmd_locate(args) -> dict:
    h = parse_map(args.map)
    c = parse_curve(args.curve)
    res = locate_by_subdivision(h, c, _config(args))
    return rp.locate_report(res, h.id, c, args.curve)


def cmd_theorem_d(args) -> dict:
    h = parse_map(args.map)
    pts = parse_points(args.points)
    res = certify_theorem_d(h, pts, _config(args))
    return rp.theorem_d_report(res, h.id, pts)


def cmd_theorem_c(args) -> dict:
    h = parse_map(args.map)
    g = parse_continuum(args.continuum, args.seed)
    side = args.side_preserving
    if side is None:
        side = h.id.startswith(SIDE_PRESERVING)
    scen = two_fixed_points_scenario(h, g, _config(args, h), side_preserving=side)
    return rp.theorem_c_report(scen, g, h.id)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planefix", description="Index computations and fixed-point certification "
                                "for plane homeomorphisms with invariant continua.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON report")
    common.add_argument("--svg", metavar="PATH", help="also write an SVG figure")
    common.add_argument("--seed", type=int, default=0, help="seed for random builtin continua")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("index", parents=[common], help="index of a catalog map along a closed curve")
    s.add_argument("--map", required=True)
    s.add_argument("--curve", required=True, help="circle:r:N[:cx:cy] | square:h[:cx:cy] | rect:x0:y0:x1:y1")
    s.set_defaults(func=cmd_index)

    s = sub.add_parser("approximate", parents=[common], help="nested disc approximations of a continuum")
    s.add_argument("--continuum", required=True, help="builtin:<name> | file:<path>")
    s.add_argument("--depth", type=int, help="finest disc level (default: continuum level + 4)")
    s.set_defaults(func=cmd_approximate)

    def certify_opts(s):
        s.add_argument("--map", required=True)
        s.add_argument("--continuum", required=True)
        s.add_argument("--radius", default=None, help="target radius, e.g. 2^-20")
        s.add_argument("--depth-limit", "--depth", dest="depth_limit", type=int, default=None)
        s.add_argument("--invariance", choices=["auto", "strict", "forward", "off"], default="auto")

    s = sub.add_parser("certify", parents=[common], help="fixed point near an invariant continuum")
    certify_opts(s)
    s.add_argument("--witness", action="store_true", help="report the index witness with classified cuts")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("locate", parents=[common], help="degree bisection inside a curve of nonzero index")
    s.add_argument("--map", required=True)
    s.add_argument("--curve", required=True)
    s.add_argument("--radius", default=None)
    s.set_defaults(func=cmd_locate)

    s = sub.add_parser("theorem_d", parents=[common], help="fixed point from a finite invariant set")
    s.add_argument("--map", required=True)
    s.add_argument("--points", required=True, help="x,y;x,y;...")
    s.add_argument("--radius", default=None)
    s.add_argument("--search-radius", type=float, default=None)
    s.set_defaults(func=cmd_theorem_d)

    s = sub.add_parser("theorem_c", parents=[common], help="search for two fixed points on a thin continuum")
    certify_opts(s)
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--side-preserving", dest="side_preserving", action="store_true", default=None)
    grp.add_argument("--side-swapping", dest="side_preserving", action="store_false")
    s.set_defaults(func=cmd_theorem_c)
    return p


def _emit(report: dict, args) -> None:
    sys.stdout.write(rp.to_json(report) if args.json else rp.to_text(report))
    if args.svg:
        emit_svg(report, args.svg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    np.seterr(all="ignore")
    try:
        report = args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PlanefixError as exc:
        _emit(rp.failure_report(args.command, exc), replace_svg(args))
        print(f"certification failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    try:
        _emit(report, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if report.get("status") == "ok" else 2


def replace_svg(args):
    """Copy of ``args`` that writes no figure (failure reports carry no geometry)."""
    ns = argparse.Namespace(**vars(args))
    ns.svg = None
    return ns


if __name__ == "__main__":
    sys.exit(main())

"""SVG rendering of report geometry."""
from __future__ import annotations

from pathlib import Path
from typing import Union

from .errors import EmptyReport

WIDTH = 800.0
MARGIN = 20.0
PALETTE = ("#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def _extent(geo: dict):
    xs, ys = [], []
    h = 2.0 ** -(geo.get("level", 0) + 1)
    for k, l in geo.get("cells", []):
        xs += [(2 * k - 1) * h, (2 * k + 1) * h]
        ys += [(2 * l - 1) * h, (2 * l + 1) * h]
    for key in ("boundaries", "curves"):
        for c in geo.get(key, []):
            xs += [p[0] for p in c]
            ys += [p[1] for p in c]
    for a, b in geo.get("segments", []):
        xs += [a[0], b[0]]
        ys += [a[1], b[1]]
    for p in geo.get("points", []):
        xs.append(p[0])
        ys.append(p[1])
    return min(xs), min(ys), max(xs), max(ys)


def render_svg(report: dict) -> str:
    geo = report.get("geometry") or {}
    if not any(geo.get(k) for k in ("cells", "boundaries", "curves", "segments", "points")):
        raise EmptyReport("report carries no geometry to draw")
    x0, y0, x1, y1 = _extent(geo)
    span = max(x1 - x0, y1 - y0, 1e-12)
    x0 -= 0.05 * span
    y0 -= 0.05 * span
    span *= 1.1
    s = (WIDTH - 2 * MARGIN) / span
    height = (y1 - y0 + 0.05 * span) * s + 2 * MARGIN

    def X(x):
        return MARGIN + (x - x0) * s

    def Y(y):
        return height - MARGIN - (y - y0) * s

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<!-- planefix {report.get('pipeline', 'report')}: scale {s:.9g} px per unit; "
        f"plane point (x, y) is drawn at ({MARGIN:g} + (x - {x0:.12g}) * {s:.9g}, "
        f"{height:.6g} - {MARGIN:g} - (y - {y0:.12g}) * {s:.9g}); y axis points up -->",
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:g}" height="{height:.6g}" '
        f'viewBox="0 0 {WIDTH:g} {height:.6g}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    h = 2.0 ** -(geo.get("level", 0) + 1)
    if geo.get("cells"):
        out.append('<g id="cells" fill="#bbbbbb" stroke="#888888" stroke-width="0.5">')
        for k, l in geo["cells"]:
            out.append(f'<rect x="{X((2 * k - 1) * h):.3f}" y="{Y((2 * l + 1) * h):.3f}" '
                       f'width="{2 * h * s:.3f}" height="{2 * h * s:.3f}"/>')
        out.append("</g>")
    for key, dash in (("boundaries", ""), ("curves", ' stroke-dasharray="6 3"')):
        if geo.get(key):
            out.append(f'<g id="{key}" fill="none" stroke-width="1.5"{dash}>')
            for i, c in enumerate(geo[key]):
                pts = " ".join(f"{X(p[0]):.3f},{Y(p[1]):.3f}" for p in c)
                out.append(f'<polygon points="{pts}" stroke="{PALETTE[i % len(PALETTE)]}"/>')
            out.append("</g>")
    if geo.get("segments"):
        out.append('<g id="segments" stroke="#ff7f0e" stroke-width="1">')
        for a, b in geo["segments"]:
            out.append(f'<line x1="{X(a[0]):.3f}" y1="{Y(a[1]):.3f}" x2="{X(b[0]):.3f}" y2="{Y(b[1]):.3f}"/>')
        out.append("</g>")
    if geo.get("points"):
        out.append('<g id="fixed-points" fill="#d62728" stroke="black" stroke-width="0.5">')
        for p in geo["points"]:
            out.append(f'<circle cx="{X(p[0]):.3f}" cy="{Y(p[1]):.3f}" r="4"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(report: dict, path: Union[str, Path]) -> Path:
    """Write the report's geometry as SVG; ``EmptyReport`` (and no file) when there is none."""
    text = render_svg(report)
    p = Path(path)
    p.write_text(text)
    return p

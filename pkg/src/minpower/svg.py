"""SVG drawing of the diagram, its dual triangulation and the solution."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .farthest import Fpvd
from .geometry import as_pointset, convex_hull
from .quadratic import MinPowerResult, two_centroids


def _f(v: float) -> str:
    s = format(float(v) + 0.0, ".10g")
    return "0" if s == "-0" else s


def _clip(o, d, length, box):
    """Liang-Barsky clip of o + t d, t in [0, length], to box; None if outside."""
    (x0, y0), (x1, y1) = box
    lo, hi = 0.0, length
    for p, q in ((-d[0], o[0] - x0), (d[0], x1 - o[0]), (-d[1], o[1] - y0), (d[1], y1 - o[1])):
        if p == 0.0:
            if q < 0.0:
                return None
            continue
        t = q / p
        if p < 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    if lo > hi or not math.isfinite(hi):
        return None
    return (o[0] + lo * d[0], o[1] + lo * d[1]), (o[0] + hi * d[0], o[1] + hi * d[1])


def view_box(X):
    """Hull bounding box scaled 3x about its centre (square if degenerate)."""
    X = as_pointset(X)
    C = X.coords[list(convex_hull(X).vertices)]
    lo, hi = C.min(axis=0), C.max(axis=0)
    c = 0.5 * (lo + hi)
    half = 1.5 * (hi - lo)
    side = max(float(half.max()), 1e-9)
    half = np.where(half < 1e-3 * side, side, half)
    return (c[0] - half[0], c[1] - half[1]), (c[0] + half[0], c[1] + half[1])


def render_svg(X, fpvd: Fpvd, result: MinPowerResult | None = None) -> str:
    X = as_pointset(X)
    box = view_box(X)
    (x0, y0), (x1, y1) = box
    w, h = x1 - x0, y1 - y0
    r = 0.008 * max(w, h)

    def line(a, b, cls, extra=""):
        # flip y so the drawing uses the usual orientation
        return (f'<line class="{cls}" x1="{_f(a[0])}" y1="{_f(-a[1])}" '
                f'x2="{_f(b[0])}" y2="{_f(-b[1])}"{extra}/>')

    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}" width="600" '
        f'height="{_f(600 * h / w)}">',
        '<g fill="none" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke">',
    ]
    # diagram edges, solid; a two-site diagram is one full line
    if fpvd.fpdt is None:
        e0 = fpvd.edges[0]
        a = _clip(e0.origin, e0.direction, math.inf, box)
        b = _clip(e0.origin, (-e0.direction[0], -e0.direction[1]), math.inf, box)
        if a and b:
            out.append(line(b[1], a[1], "fpvd", ' vector-effect="non-scaling-stroke"'))
    else:
        for e in fpvd.edges:
            if e.length == 0.0:
                continue
            seg = _clip(e.origin, e.direction, e.length, box)
            if seg:
                out.append(line(seg[0], seg[1], "fpvd", ' vector-effect="non-scaling-stroke"'))
    # triangulation edges, dashed
    C = X.coords
    dual = fpvd.fpdt.edges if fpvd.fpdt is not None else [fpvd.edges[0].sites]
    dash = _f(3 * r)
    for i, j in dual:
        out.append(line(C[i], C[j], "fpdt",
                        f' stroke-dasharray="{dash} {dash}" vector-effect="non-scaling-stroke"'))
    out.append("</g>")

    def circle(p, cls, fill):
        return (f'<circle class="{cls}" cx="{_f(p[0])}" cy="{_f(-p[1])}" r="{_f(r)}" '
                f'fill="{fill}" stroke="black" vector-effect="non-scaling-stroke"/>')

    for p in two_centroids(X).Mj:
        out.append(circle(p, "centroid2", "gray"))
    for p in C:
        out.append(circle(p, "node", "black"))
    if result is not None:
        out.append(circle(result.s_star, "sstar", "white"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(X, fpvd: Fpvd, fpdt, result, path) -> None:
    """Write the drawing to ``path``; ``fpdt`` must be the diagram's own dual."""
    if fpdt is not None and fpdt is not fpvd.fpdt:
        raise ValueError("triangulation does not belong to this diagram")
    Path(path).write_text(render_svg(X, fpvd, result))

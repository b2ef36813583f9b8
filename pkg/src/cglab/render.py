"""Figure rendering for 2-D instances.

Two paths: matplotlib figures written to files next to the delimited
report output (presentation quality, float coordinates are fine here), and
a hand-emitted SVG whose structure is contract-tested: one <path> element
per facet or cut, well-formed XML, coordinates at 12 significant digits
with an embedded exactness disclaimer.
"""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bodies import (
    ConvexBody,
    Ellipsoid,
    IrrationalLine,
    MotzkinSum,
    RationalPoly,
    Segment,
    ShiftedHyperbola,
)
from .polytope import HPolyhedron, VPolyhedron, _as_h, _as_v


def _clip_polygon(P, window):
    """Vertices of P intersected with the window box, in drawing order."""
    (x0, x1), (y0, y1) = window
    box_rows = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    box_b = [Fraction(x1), Fraction(-x0), Fraction(y1), Fraction(-y0)]
    H = _as_h(P)
    clipped = HPolyhedron.make(list(H.A) + box_rows, list(H.b) + box_b)
    V = clipped.to_v()
    pts = [(float(v[0]), float(v[1])) for v in V.vertices]
    if len(pts) < 3:
        return pts
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    pts.sort(key=lambda p: np.arctan2(p[1] - cy, p[0] - cx))
    return pts


def _draw_body(ax, body: ConvexBody, window):
    (x0, x1), (y0, y1) = window
    if isinstance(body, ShiftedHyperbola):
        s1, s2 = float(body.shift[0]), float(body.shift[1])
        r = float(body.level)
        xs = np.linspace(max(s1 + r / (y1 - s2), x0), x1, 400)
        ys = s2 + r / (xs - s1)
        ax.plot(xs, ys, color="tab:blue", lw=1.5, label="body boundary")
        ax.fill_between(xs, ys, y1, color="tab:blue", alpha=0.15)
    elif isinstance(body, (RationalPoly, MotzkinSum)):
        H = body.hrep if isinstance(body, RationalPoly) else body._hrep()
        pts = _clip_polygon(H, window)
        if pts:
            ax.fill(*zip(*pts), color="tab:blue", alpha=0.15)
            ax.plot(
                [p[0] for p in pts + pts[:1]],
                [p[1] for p in pts + pts[:1]],
                color="tab:blue",
                lw=1.5,
            )
    elif isinstance(body, Ellipsoid):
        t = np.linspace(0, 2 * np.pi, 200)
        qs = np.array([[float(x) for x in row] for row in body.shape])
        try:
            half = np.linalg.cholesky(qs)
        except np.linalg.LinAlgError:
            half = np.sqrt(np.abs(qs))
        circle = np.stack([np.cos(t), np.sin(t)])
        pts = (half @ circle).T + np.array([float(c) for c in body.center])
        ax.plot(pts[:, 0], pts[:, 1], color="tab:blue", lw=1.5)
        ax.fill(pts[:, 0], pts[:, 1], color="tab:blue", alpha=0.15)
    elif isinstance(body, IrrationalLine):
        d = [float(x) for x in body.direction]
        span = max(abs(x1), abs(x0), abs(y1), abs(y0)) * 2
        ax.plot([-d[0] * span, d[0] * span], [-d[1] * span, d[1] * span],
                color="tab:blue", lw=1.5)
    elif isinstance(body, Segment):
        p = [float(x) for x in body.p]
        q = [float(x) for x in body.q]
        ax.plot([p[0], q[0]], [p[1], q[1]], color="tab:blue", lw=2.0)


def _draw_rows(ax, rows, window, color, label):
    first = True
    for a, b in rows:
        seg = _line_in_window(a, b, window)
        if seg:
            (xa, ya), (xb, yb) = seg
            ax.plot([xa, xb], [ya, yb], color=color, lw=1.0,
                    label=label if first else None)
            first = False


def render_figure(path, window, body=None, polyhedra=(), cuts=(), title=None,
                  lattice=True):
    """Write a matplotlib figure of bodies, polyhedra and cut lines."""
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    (x0, x1), (y0, y1) = window
    if lattice:
        xs = range(int(np.ceil(x0)), int(np.floor(x1)) + 1)
        ys = range(int(np.ceil(y0)), int(np.floor(y1)) + 1)
        grid = [(i, j) for i in xs for j in ys]
        ax.scatter([p[0] for p in grid], [p[1] for p in grid], s=4,
                   color="0.6", zorder=1)
    if body is not None:
        _draw_body(ax, body, window)
    for P, color in zip(polyhedra, ("tab:red", "tab:green", "tab:purple")):
        pts = _clip_polygon(P, window)
        if pts:
            ax.fill(*zip(*pts), color=color, alpha=0.12)
            ax.plot([p[0] for p in pts + pts[:1]], [p[1] for p in pts + pts[:1]],
                    color=color, lw=1.2)
    _draw_rows(ax, cuts, window, "tab:orange", "cuts")
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


# -- exact hand-emitted SVG --------------------------------------------------


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def _line_in_window(a, b, window):
    """Endpoints of {x : a.x = b} clipped to the window, or None."""
    (x0, x1), (y0, y1) = window
    a0, a1 = Fraction(a[0]), Fraction(a[1])
    b = Fraction(b)
    pts = []
    if a1 != 0:
        for xe in (Fraction(x0), Fraction(x1)):
            ye = (b - a0 * xe) / a1
            if Fraction(y0) <= ye <= Fraction(y1):
                pts.append((xe, ye))
    if a0 != 0:
        for ye in (Fraction(y0), Fraction(y1)):
            xe = (b - a1 * ye) / a0
            if Fraction(x0) <= xe <= Fraction(x1):
                pts.append((xe, ye))
    uniq = sorted(set(pts))
    if len(uniq) < 2:
        return None
    return uniq[0], uniq[-1]


def svg_scene(window, facets=(), cuts=(), points=(), size=480):
    """Exact-layout SVG text: one path per facet row and per cut row.

    Facets and cuts are (a, b) inequality rows drawn as their boundary
    lines inside the window.  Points become small circles.  Coordinates
    carry 12 significant digits; the exact values live in the JSON output,
    as the embedded comment says.
    """
    (x0, x1), (y0, y1) = window
    sx = size / float(x1 - x0)
    sy = size / float(y1 - y0)

    def to_px(p):
        return (float(p[0] - x0) * sx, size - float(p[1] - y0) * sy)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">',
        "<!-- coordinates are approximate (12 significant digits); "
        "exact rational data is in the JSON report -->",
    ]
    for kind, rows, color in (("facet", facets, "#d62728"), ("cut", cuts, "#ff7f0e")):
        for a, b in rows:
            seg = _line_in_window(a, b, window)
            if seg is None:
                continue
            (xa, ya), (xb, yb) = (to_px(seg[0]), to_px(seg[1]))
            parts.append(
                f'<path class="{kind}" d="M {_fmt(xa)} {_fmt(ya)} L {_fmt(xb)} {_fmt(yb)}" '
                f'stroke="{color}" fill="none" stroke-width="1.5"/>'
            )
    for p in points:
        px, py = to_px((Fraction(p[0]), Fraction(p[1])))
        parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="2.5" fill="#333"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path, window, facets=(), cuts=(), points=()):
    text = svg_scene(window, facets, cuts, points)
    with open(path, "w") as fh:
        fh.write(text)
    return path

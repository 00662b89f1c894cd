"""Minimal deterministic SVG emission for map and region figures.

World coordinates use the mathematical orientation (y up); the emitted
viewport flips the axis internally.  All coordinates are written with six
decimals so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import math

from .geometry import GeneralizedCircle


def _fmt(v: float) -> str:
    out = f"{v:.6f}"
    return "0.000000" if out == "-0.000000" else out


class SvgCanvas:
    """Fixed-viewport canvas: world bbox plus a 5% margin mapped to pixels."""

    def __init__(self, xmin, xmax, ymin, ymax, width=640):
        span_x = xmax - xmin or 1.0
        span_y = ymax - ymin or 1.0
        margin = 0.05 * max(span_x, span_y)
        self.xmin = xmin - margin
        self.xmax = xmax + margin
        self.ymin = ymin - margin
        self.ymax = ymax + margin
        self.scale = width / (self.xmax - self.xmin)
        self.width = width
        self.height = (self.ymax - self.ymin) * self.scale
        self.elements = []

    def to_px(self, x, y):
        return ((x - self.xmin) * self.scale,
                (self.ymax - y) * self.scale)

    def polyline(self, points, color="#000000", width=1.2, dashed=False,
                 closed=False, fill="none"):
        coords = " ".join("%s,%s" % tuple(map(_fmt, self.to_px(p.real, p.imag)))
                          for p in points)
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        tag = "polygon" if closed else "polyline"
        self.elements.append(
            f'<{tag} points="{coords}" fill="{fill}" stroke="{color}" '
            f'stroke-width="{_fmt(width)}"{dash}/>')

    def circle_outline(self, center, radius, color="#888888", width=1.0,
                       dashed=True):
        cx, cy = self.to_px(center.real, center.imag)
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        self.elements.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius * self.scale)}" '
            f'fill="none" stroke="{color}" stroke-width="{_fmt(width)}"{dash}/>')

    def dot(self, p, radius=3.0, color="#d62728"):
        cx, cy = self.to_px(p.real, p.imag)
        self.elements.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius)}" '
            f'fill="{color}" stroke="none"/>')

    def cross(self, p, size=5.0, color="#1f77b4", width=1.5):
        cx, cy = self.to_px(p.real, p.imag)
        s = size
        for dx1, dy1, dx2, dy2 in ((-s, -s, s, s), (-s, s, s, -s)):
            self.elements.append(
                f'<line x1="{_fmt(cx + dx1)}" y1="{_fmt(cy + dy1)}" '
                f'x2="{_fmt(cx + dx2)}" y2="{_fmt(cy + dy2)}" '
                f'stroke="{color}" stroke-width="{_fmt(width)}"/>')

    def carrier(self, c: GeneralizedCircle, color="#888888", dashed=True):
        if c.is_line:
            # clip a long segment to the viewport diagonal
            diag = math.hypot(self.xmax - self.xmin, self.ymax - self.ymin)
            a = c.point - diag * c.direction
            b = c.point + diag * c.direction
            self.polyline([a, b], color=color, width=1.0, dashed=dashed)
        else:
            self.circle_outline(c.center, c.radius, color=color, dashed=dashed)

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'width="{_fmt(self.width)}" height="{_fmt(self.height)}" '
                f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}" '
                f'version="1.1">')
        body = "\n".join(self.elements)
        return head + "\n" + body + "\n</svg>\n"


def map_figure(solution, description, normalized=None) -> str:
    """Boundary polyline with dashed edge carriers, vertex dots and
    tooth-circle intersection crosses."""
    trace = solution.boundary.w_boundary
    xs = [w.real for w in trace]
    ys = [w.imag for w in trace]
    canvas = SvgCanvas(min(xs), max(xs), min(ys), max(ys))
    for tag, carrier in sorted(description.carriers.items()):
        color = "#999999" if tag.startswith("tooth") else "#bbbbbb"
        canvas.carrier(carrier, color=color, dashed=True)
    order = solution.boundary.thetas.argsort()
    canvas.polyline([trace[i] for i in order], color="#000000", width=1.5,
                    closed=True)
    for _, v in sorted(description.vertices.items()):
        canvas.dot(v, radius=3.0, color="#d62728")
    for b in (description.b_minus, description.b_plus):
        if b is not None:
            canvas.cross(complex(b, 0.0))
    return canvas.render()


def region_figure(sample) -> str:
    """Shaded gearlike region between the solid endpoint curves, inside the
    dashed Nehari band."""
    ts = list(sample.t)
    lo_all = min(sample.nehari_lo)
    hi_all = max(sample.nehari_hi)
    canvas = SvgCanvas(min(ts), max(ts), lo_all, hi_all, width=640)
    shade = ([complex(t, v) for t, v in zip(ts, sample.lam_plus)]
             + [complex(t, v) for t, v in zip(reversed(ts),
                                              reversed(list(sample.lam_minus)))])
    canvas.polyline(shade, color="#555555", width=1.0, closed=True,
                    fill="#cccccc")
    canvas.polyline([complex(t, v) for t, v in zip(ts, sample.lam_plus)],
                    color="#000000", width=1.6)
    canvas.polyline([complex(t, v) for t, v in zip(ts, sample.lam_minus)],
                    color="#000000", width=1.6)
    canvas.polyline([complex(t, v) for t, v in zip(ts, sample.nehari_hi)],
                    color="#444444", width=1.2, dashed=True)
    canvas.polyline([complex(t, v) for t, v in zip(ts, sample.nehari_lo)],
                    color="#444444", width=1.2, dashed=True)
    # axes
    canvas.polyline([complex(min(ts), 0.0), complex(max(ts), 0.0)],
                    color="#aaaaaa", width=0.8)
    return canvas.render()

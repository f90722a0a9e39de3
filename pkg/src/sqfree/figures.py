"""Plain SVG output for the pole pattern and the phase diagram.

Both figures use a fixed 800x800 canvas with a 60 px margin. The plot box is
therefore [60, 740] in both directions. A data point (u, v) maps to

    px = 60 + 680 * (u - u_min) / (u_max - u_min)
    py = 740 - 680 * (v - v_min) / (v_max - v_min)

so v grows upward. Numbers are written with fixed precision so the output is
byte-stable for equal inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

SIZE = 800
MARGIN = 60


def _f(x: float) -> str:
    return f"{x:.2f}"


@dataclass(frozen=True)
class Frame:
    u_min: float
    u_max: float
    v_min: float
    v_max: float

    def __call__(self, u: float, v: float) -> tuple:
        span = SIZE - 2 * MARGIN
        px = MARGIN + span * (u - self.u_min) / (self.u_max - self.u_min)
        py = SIZE - MARGIN - span * (v - self.v_min) / (self.v_max - self.v_min)
        return px, py


class Canvas:
    def __init__(self, title: str):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">',
            f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
            f'<text x="{SIZE // 2}" y="30" font-family="sans-serif" font-size="18" '
            f'text-anchor="middle">{_escape(title)}</text>',
        ]

    def add(self, element: str):
        self.parts.append(element)

    def line(self, p, q, stroke="black", width=1.0, dash=None):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<line x1="{_f(p[0])}" y1="{_f(p[1])}" x2="{_f(q[0])}" y2="{_f(q[1])}" '
                 f'stroke="{stroke}" stroke-width="{width}"{extra}/>')

    def polyline(self, points: Iterable, stroke="black", width=1.5, dash=None):
        pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in points)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
                 f'stroke-width="{width}"{extra}/>')

    def circle(self, c, r, fill="none", stroke="black", width=1.0):
        self.add(f'<circle cx="{_f(c[0])}" cy="{_f(c[1])}" r="{_f(r)}" fill="{fill}" '
                 f'stroke="{stroke}" stroke-width="{width}"/>')

    def cross(self, c, r, stroke="black", width=1.5):
        x, y = c
        self.line((x - r, y - r), (x + r, y + r), stroke, width)
        self.line((x - r, y + r), (x + r, y - r), stroke, width)

    def text(self, pos, s, size=14, anchor="start"):
        self.add(f'<text x="{_f(pos[0])}" y="{_f(pos[1])}" font-family="sans-serif" '
                 f'font-size="{size}" text-anchor="{anchor}">{_escape(s)}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _axes(canvas: Canvas, frame: Frame, xticks, yticks, xlabel, ylabel, log_x=False):
    lo, hi = MARGIN, SIZE - MARGIN
    canvas.add(f'<rect x="{lo}" y="{lo}" width="{hi - lo}" height="{hi - lo}" fill="none" '
               f'stroke="black" stroke-width="1"/>')
    for t in xticks:
        u = math.log10(t) if log_x else t
        px, _ = frame(u, frame.v_min)
        canvas.line((px, hi), (px, hi + 6))
        canvas.text((px, hi + 22), f"{t:g}", 12, "middle")
    for t in yticks:
        _, py = frame(frame.u_min, t)
        canvas.line((lo - 6, py), (lo, py))
        canvas.text((lo - 10, py + 4), f"{t:g}", 12, "end")
    canvas.text((SIZE / 2, SIZE - 15), xlabel, 14, "middle")
    canvas.add(f'<text x="18" y="{SIZE // 2}" font-family="sans-serif" font-size="14" '
               f'text-anchor="middle" transform="rotate(-90 18 {SIZE // 2})">'
               f'{_escape(ylabel)}</text>')


def poles_svg(pole_sets: Sequence, radius: float = 1.6) -> str:
    """Poles (red crosses) and zeros (blue circles) of one or more generating
    functions in the complex x-plane. The dominant real pole of each set is
    ringed in green. The view is the square [-radius, radius]^2."""
    frame = Frame(-radius, radius, -radius, radius)
    ells = [ps.ell for ps in pole_sets]
    title = "Poles and zeros, l = " + ", ".join(str(e) for e in ells)
    cv = Canvas(title)
    ticks = [-1.5, -1, -0.5, 0, 0.5, 1, 1.5]
    _axes(cv, frame, [t for t in ticks if abs(t) <= radius], [t for t in ticks if abs(t) <= radius],
          "Re x", "Im x")
    cv.line(frame(-radius, 0), frame(radius, 0), "#bbbbbb", 0.5)
    cv.line(frame(0, -radius), frame(0, radius), "#bbbbbb", 0.5)
    span = SIZE - 2 * MARGIN
    unit_r = span / (2 * radius)
    cv.circle(frame(0, 0), unit_r, stroke="#888888", width=1.0)

    for ps in pole_sets:
        for z, _ in ps.zeros:
            u, v = float(z.real), float(z.imag)
            if abs(u) <= radius and abs(v) <= radius:
                cv.circle(frame(u, v), 3.5, stroke="blue", width=1.2)
        for z, _ in ps.poles:
            u, v = float(z.real), float(z.imag)
            if abs(u) <= radius and abs(v) <= radius:
                cv.cross(frame(u, v), 3.5, stroke="red", width=1.2)
        dom = dominant_pole(ps)
        if dom is not None:
            cv.circle(frame(dom, 0), 8, stroke="green", width=2.0)

    lo = MARGIN + 10
    cv.cross((lo + 10, lo + 12), 4, stroke="red")
    cv.text((lo + 22, lo + 17), "pole", 13)
    cv.circle((lo + 10, lo + 32), 4, stroke="blue")
    cv.text((lo + 22, lo + 37), "zero", 13)
    cv.circle((lo + 10, lo + 52), 7, stroke="green", width=2.0)
    cv.text((lo + 22, lo + 57), "dominant real pole", 13)
    return cv.render()


def dominant_pole(pole_set):
    """Smallest positive real pole of a PoleSet, or None."""
    real = [float(z.real) for z, _ in pole_set.poles
            if abs(float(z.imag)) < 1e-20 and float(z.real) > 0]
    return min(real) if real else None


def phase_svg(curve, q_min: float = 1e-2, q_max: float = 1e2, samples: int = 201) -> str:
    """Critical curve ``x_c(q)`` against log q with the rigorous bound curves.

    Horizontal axis is log10 q, vertical axis is x_c. Estimated points are
    black dots with error bars; the upper bound is solid red and the lower
    bound dashed blue."""
    from sqfree.thermo import critical_bounds

    lq = [math.log10(q_min) + i * (math.log10(q_max) - math.log10(q_min)) / (samples - 1)
          for i in range(samples)]
    bounds = [critical_bounds(10**u) for u in lq]
    ests = [p for p in curve.points if p.x_c is not None]
    v_max = max([hi for _, hi in bounds] + [p.x_c for p in ests] + [1.0])
    v_max = math.ceil(v_max * 2) / 2
    frame = Frame(math.log10(q_min), math.log10(q_max), 0.0, v_max)

    cv = Canvas(f"Phase diagram, n = {curve.n_used} ({curve.method})")
    yt = [i * 0.5 for i in range(int(v_max / 0.5) + 1)]
    xt = [10.0**e for e in range(int(math.floor(math.log10(q_min))),
                                 int(math.ceil(math.log10(q_max))) + 1)]
    _axes(cv, frame, xt, yt, "q (log scale)", "x_c(q)", log_x=True)

    clip = lambda v: min(v, v_max)  # noqa: E731
    cv.polyline([frame(u, clip(hi)) for u, (_, hi) in zip(lq, bounds)], "red", 1.5)
    cv.polyline([frame(u, clip(lo)) for u, (lo, _) in zip(lq, bounds)], "blue", 1.5, dash="6,4")
    for p in ests:
        u = math.log10(p.q)
        if p.uncertainty:
            cv.line(frame(u, clip(p.x_c - p.uncertainty)), frame(u, clip(p.x_c + p.uncertainty)))
        cv.circle(frame(u, clip(p.x_c)), 3, fill="black", stroke="black")

    lo = SIZE - MARGIN - 200
    cv.line((lo, MARGIN + 20), (lo + 30, MARGIN + 20), "red", 1.5)
    cv.text((lo + 38, MARGIN + 25), "upper bound", 13)
    cv.line((lo, MARGIN + 40), (lo + 30, MARGIN + 40), "blue", 1.5, dash="6,4")
    cv.text((lo + 38, MARGIN + 45), "lower bound", 13)
    cv.circle((lo + 15, MARGIN + 60), 3, fill="black")
    cv.text((lo + 38, MARGIN + 65), "estimate", 13)
    return cv.render()

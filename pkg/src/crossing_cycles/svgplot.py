"""
Deterministic SVG phase portraits.

The figure shows both coordinate axes, the switching semi-axes in their
own colours, every verified cycle as one closed path (saddle arc followed
by center arc) with its switching points labelled ``p_i`` and ``q_i``, and
optionally a grid of normalised direction glyphs. All numbers are written
with fixed precision, so equal inputs give byte-identical files.
"""

from __future__ import annotations

import math
from typing import Sequence

from .fields import CenterSystem, SaddleParams, center_field, saddle_field
from .orbits import VerifiedCycle

__all__ = ["render_svg", "write_svg", "parse_window"]

WIDTH = 640
HEIGHT = 640
MARGIN = 40
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79")


def parse_window(text: str):
    """``"xmin,xmax,ymin,ymax"`` to a 4-tuple of floats."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError("window: expected xmin,xmax,ymin,ymax")
    xmin, xmax, ymin, ymax = (float(p) for p in parts)
    if not (xmin < xmax and ymin < ymax) or not all(map(math.isfinite, (xmin, xmax, ymin, ymax))):
        raise ValueError("window: need finite xmin < xmax and ymin < ymax")
    return xmin, xmax, ymin, ymax


def _auto_window(cycles: Sequence[VerifiedCycle]):
    pts = [pt for vc in cycles for pt in vc.plus_arc.samples + vc.minus_arc.samples]
    if not pts:
        return (-1.0, 1.0, -1.0, 1.0)
    xs, ys = [p[0] for p in pts] + [0.0], [p[1] for p in pts] + [0.0]
    padx = 0.08 * (max(xs) - min(xs) or 1.0)
    pady = 0.08 * (max(ys) - min(ys) or 1.0)
    return (min(xs) - padx, max(xs) + padx, min(ys) - pady, max(ys) + pady)


def render_svg(cycles: Sequence[VerifiedCycle], window=None, *, saddle: SaddleParams | None = None,
               center: CenterSystem | None = None, glyphs: int = 0, title: str = "") -> str:
    """SVG text for the verified ``cycles`` inside ``window``.

    ``glyphs > 0`` draws a ``glyphs x glyphs`` grid of direction marks using
    the saddle field in the open first quadrant and the center field
    elsewhere (both systems must then be given).
    """
    xmin, xmax, ymin, ymax = window if window is not None else _auto_window(cycles)
    sx = (WIDTH - 2 * MARGIN) / (xmax - xmin)
    sy = (HEIGHT - 2 * MARGIN) / (ymax - ymin)

    def X(x):
        return f"{MARGIN + (x - xmin) * sx:.3f}"

    def Y(y):
        return f"{HEIGHT - MARGIN - (y - ymin) * sy:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<title>{_escape(title)}</title>' if title else "<title>phase portrait</title>",
        '<defs><clipPath id="frame">'
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}"/></clipPath></defs>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="white" stroke="#444" stroke-width="1"/>',
        '<g id="window" clip-path="url(#frame)">',
    ]
    # full coordinate axes, drawn faintly underneath the switching rays
    if ymin <= 0 <= ymax:
        out.append(f'<line class="axis" x1="{X(xmin)}" y1="{Y(0)}" x2="{X(xmax)}" y2="{Y(0)}" '
                   'stroke="#bbbbbb" stroke-width="1"/>')
    if xmin <= 0 <= xmax:
        out.append(f'<line class="axis" x1="{X(0)}" y1="{Y(ymin)}" x2="{X(0)}" y2="{Y(ymax)}" '
                   'stroke="#bbbbbb" stroke-width="1"/>')
    if xmax > 0 and ymin <= 0 <= ymax:
        out.append(f'<line id="switch-x" class="switching" x1="{X(max(0.0, xmin))}" y1="{Y(0)}" '
                   f'x2="{X(xmax)}" y2="{Y(0)}" stroke="#000000" stroke-width="2.5"/>')
    if ymax > 0 and xmin <= 0 <= xmax:
        out.append(f'<line id="switch-y" class="switching" x1="{X(0)}" y1="{Y(max(0.0, ymin))}" '
                   f'x2="{X(0)}" y2="{Y(ymax)}" stroke="#555555" stroke-width="2.5" '
                   'stroke-dasharray="8 4"/>')

    if glyphs > 0:
        if saddle is None or center is None:
            raise ValueError("direction glyphs need both systems")
        out.append('<g id="glyphs" stroke="#999999" stroke-width="1">')
        length = 0.35 * min(WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN) / glyphs
        for i in range(glyphs):
            for j in range(glyphs):
                gx = xmin + (i + 0.5) * (xmax - xmin) / glyphs
                gy = ymin + (j + 0.5) * (ymax - ymin) / glyphs
                fx, fy = (saddle_field(saddle, (gx, gy)) if gx > 0 and gy > 0
                          else center_field(center, (gx, gy)))
                # screen-space direction (y flipped)
                dx, dy = fx * sx, -fy * sy
                norm = math.hypot(dx, dy)
                if not math.isfinite(norm) or norm == 0.0:
                    continue
                cx, cy = float(X(gx)), float(Y(gy))
                ex, ey = cx + length * dx / norm, cy + length * dy / norm
                out.append(f'<line x1="{cx:.3f}" y1="{cy:.3f}" x2="{ex:.3f}" y2="{ey:.3f}"/>')
                out.append(f'<circle cx="{ex:.3f}" cy="{ey:.3f}" r="1.5" fill="#999999"/>')
        out.append("</g>")

    for k, vc in enumerate(cycles, start=1):
        colour = PALETTE[(k - 1) % len(PALETTE)]
        pts = list(vc.plus_arc.samples) + list(vc.minus_arc.samples[1:])
        d = "M " + " L ".join(f"{X(px)} {Y(py)}" for px, py in pts) + " Z"
        out.append(f'<path id="cycle-{k}" class="cycle" d="{d}" fill="none" '
                   f'stroke="{colour}" stroke-width="1.5"/>')
    out.append("</g>")

    for k, vc in enumerate(cycles, start=1):
        colour = PALETTE[(k - 1) % len(PALETTE)]
        px, qy = vc.candidate.x, vc.candidate.y
        out.append(f'<circle class="switch-point" cx="{X(px)}" cy="{Y(0)}" r="3" fill="{colour}"/>')
        out.append(f'<text x="{X(px)}" y="{float(Y(0)) + 14:.3f}" font-size="11" '
                   f'text-anchor="middle" fill="{colour}">p_{k}</text>')
        out.append(f'<circle class="switch-point" cx="{X(0)}" cy="{Y(qy)}" r="3" fill="{colour}"/>')
        out.append(f'<text x="{float(X(0)) - 6:.3f}" y="{float(Y(qy)) + 4:.3f}" font-size="11" '
                   f'text-anchor="end" fill="{colour}">q_{k}</text>')

    out.append(f'<text x="{MARGIN}" y="{HEIGHT - 12}" font-size="11">'
               f'x in [{xmin:.4g}, {xmax:.4g}], y in [{ymin:.4g}, {ymax:.4g}]</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_svg(path, svg: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)

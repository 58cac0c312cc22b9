"""Minimal SVG 1.1 writer for curve overlays."""

from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

import numpy as np

PALETTE = ("#000000", "#1f4fd1", "#d1261f", "#1d9a3a", "#9a3ad1", "#d18a1f")
MARGIN = 0.05


@dataclass
class Layer:
    points: np.ndarray
    closed: bool = True
    markers: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    label: str = ""


def _num(x):
    return "%.8g" % x


def _path_data(points, closed):
    finite = np.all(np.isfinite(points), axis=1)
    parts = []
    pen_down = False
    for (x, y), ok in zip(points, finite):
        if not ok:
            pen_down = False
            continue
        parts.append(("L" if pen_down else "M") + f"{_num(x)} {_num(y)}")
        pen_down = True
    if closed and finite.all() and parts:
        parts.append("Z")
    return " ".join(parts)


def render(layers, width=600):
    """SVG text: one ``path`` per layer and one ``circle`` per cusp marker.

    The view box is the union bounding box with a 5% margin; y points up.
    """
    pts = [l.points[np.all(np.isfinite(l.points), axis=1)] for l in layers]
    pts += [l.markers for l in layers if len(l.markers)]
    allpts = np.concatenate(pts) if pts else np.zeros((0, 2))
    if allpts.size == 0:
        allpts = np.array([[-1.0, -1.0], [1.0, 1.0]])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-9)
    lo = lo - MARGIN * span
    hi = hi + MARGIN * span
    w, h = hi - lo
    height = width * h / w
    stroke = span / 400
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" '
        f'height="{_num(height)}" viewBox="{_num(lo[0])} {_num(-hi[1])} {_num(w)} {_num(h)}">',
        '<g transform="scale(1,-1)">',
    ]
    for i, layer in enumerate(layers):
        color = PALETTE[i % len(PALETTE)]
        label = f" data-label={quoteattr(layer.label)}" if layer.label else ""
        out.append(
            f'<path d="{_path_data(layer.points, layer.closed)}" fill="none" '
            f'stroke="{color}" stroke-width="{_num(stroke)}"{label}/>'
        )
        for x, y in layer.markers:
            out.append(
                f'<circle class="cusp" cx="{_num(x)}" cy="{_num(y)}" r="{_num(4 * stroke)}" '
                f'fill="{color}"/>'
            )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

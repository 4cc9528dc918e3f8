"""SVG drawings of instances and layouts."""

from __future__ import annotations

from typing import Optional

from .model import Instance, Layout


def _f(x: float) -> str:
    text = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def render_svg(instance: Instance, layout: Optional[Layout] = None) -> str:
    """Sources as circles, sinks as squares, Steiner vertices as dots.

    Edge widths grow with load^alpha. The view box covers every drawn point
    plus a 5% margin; the y axis points up.
    """
    pts = list(instance.sources) + list(instance.sinks)
    if layout is not None:
        pts += [p for p in layout.positions if p is not None]
    if pts:
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = y0 = 0.0
        x1 = y1 = 1.0
    span = max(x1 - x0, y1 - y0) or 1.0
    margin = 0.05 * span
    vx, vy = x0 - margin, -(y1 + margin)
    vw, vh = (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin
    r = 0.012 * span
    stroke = 0.004 * span

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{_f(vx)} {_f(vy)} {_f(vw)} {_f(vh)}">',
    ]
    if layout is not None:
        topo = layout.topology
        out.append('<g id="edges" stroke="#555555" stroke-linecap="round">')
        for v, p in topo.edges():
            a, b = layout.positions[v], layout.positions[p]
            if a is None or b is None:
                continue
            width = stroke * topo.loads[v] ** instance.alpha
            out.append(
                f'<line x1="{_f(a.x)}" y1="{_f(-a.y)}" x2="{_f(b.x)}" y2="{_f(-b.y)}" stroke-width="{_f(width)}"/>'
            )
        out.append("</g>")
        out.append('<g id="steiner" fill="#d62728">')
        for v in topo.steiner_ids:
            p = layout.positions[v]
            if p is not None:
                out.append(f'<circle cx="{_f(p.x)}" cy="{_f(-p.y)}" r="{_f(0.5 * r)}"/>')
        out.append("</g>")
    out.append(f'<g id="sources" fill="#ffffff" stroke="#1f77b4" stroke-width="{_f(0.5 * stroke)}">')
    for p in instance.sources:
        out.append(f'<circle cx="{_f(p.x)}" cy="{_f(-p.y)}" r="{_f(r)}"/>')
    out.append("</g>")
    out.append('<g id="sinks" fill="#2ca02c">')
    for p in instance.sinks:
        out.append(f'<rect x="{_f(p.x - r)}" y="{_f(-p.y - r)}" width="{_f(2 * r)}" height="{_f(2 * r)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

"""Deterministic SVG 1.1 rendering (512x512, no external fonts).

Two renderers:
- arrow diagrams: all edge vectors translated to the origin, unit length,
  labelled 1..n;
- 1-dimensional complexes: seeded force layout of the vertex/arc graph,
  with optional per-vertex annotations.
"""
from __future__ import annotations

import math
import random
from typing import Dict, List, Optional, Sequence, Tuple

SIZE = 512
_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    f'width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">\n'
)


def _fmt(x: float) -> str:
    # fixed precision keeps output byte-identical across platforms
    return f"{x:.3f}"


def _text(x: float, y: float, s: str, size: int = 14, anchor: str = "middle") -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" '
        f'font-size="{size}" text-anchor="{anchor}">{s}</text>\n'
    )


def arrow_diagram(thetas: Sequence[float], title: Optional[str] = None) -> str:
    """Unit arrows from a common origin at the given directions."""
    cx = cy = SIZE / 2.0
    r = SIZE * 0.33
    parts = [_HEADER, f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>\n']
    parts.append(
        '<defs><marker id="tip" markerWidth="10" markerHeight="8" refX="8" '
        'refY="4" orient="auto"><path d="M0,0 L10,4 L0,8 z" fill="black"/>'
        "</marker></defs>\n"
    )
    parts.append(
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" fill="none" '
        'stroke="#cccccc" stroke-width="1"/>\n'
    )
    for i, th in enumerate(thetas, start=1):
        # SVG y axis points down; negate to draw mathematically
        x = cx + r * math.cos(th)
        y = cy - r * math.sin(th)
        parts.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(x)}" y2="{_fmt(y)}" '
            'stroke="black" stroke-width="2" marker-end="url(#tip)"/>\n'
        )
        lx = cx + (r + 22) * math.cos(th)
        ly = cy - (r + 22) * math.sin(th)
        parts.append(_text(lx, ly + 5, str(i)))
    if title:
        parts.append(_text(cx, 28, title, size=16))
    parts.append("</svg>\n")
    return "".join(parts)


def _force_layout(
    n: int, edges: Sequence[Tuple[int, int]], seed: int, iterations: int = 300
) -> List[Tuple[float, float]]:
    """Fruchterman-Reingold style layout on the unit square, seeded."""
    rng = random.Random(seed)
    pos = [(rng.random(), rng.random()) for _ in range(n)]
    if n == 1:
        return [(0.5, 0.5)]
    k = 1.0 / math.sqrt(n)
    temp = 0.2
    for _ in range(iterations):
        disp = [[0.0, 0.0] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                dx = pos[i][0] - pos[j][0]
                dy = pos[i][1] - pos[j][1]
                d2 = dx * dx + dy * dy + 1e-9
                d = math.sqrt(d2)
                f = k * k / d2
                disp[i][0] += dx * f
                disp[i][1] += dy * f
                disp[j][0] -= dx * f
                disp[j][1] -= dy * f
        for a, b in edges:
            dx = pos[a][0] - pos[b][0]
            dy = pos[a][1] - pos[b][1]
            d = math.sqrt(dx * dx + dy * dy) + 1e-9
            f = d / k
            disp[a][0] -= dx / d * f * 0.01
            disp[a][1] -= dy / d * f * 0.01
            disp[b][0] += dx / d * f * 0.01
            disp[b][1] += dy / d * f * 0.01
        for i in range(n):
            dx, dy = disp[i]
            d = math.sqrt(dx * dx + dy * dy) + 1e-9
            step = min(d, temp)
            pos[i] = (pos[i][0] + dx / d * step, pos[i][1] + dy / d * step)
        temp *= 0.985
    xs = [p[0] for p in pos]
    ys = [p[1] for p in pos]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    return [((x - min(xs)) / span, (y - min(ys)) / span) for x, y in pos]


def graph_diagram(
    vertex_labels: Sequence[str],
    edges: Sequence[Tuple[int, int]],
    seed: int = 0,
    title: Optional[str] = None,
    vertex_notes: Optional[Dict[int, str]] = None,
) -> str:
    """Render a 1-dimensional complex (graph) with a seeded force layout.

    Parallel edges between the same pair are drawn as distinct curved arcs;
    loops are drawn as small circles at the vertex.
    """
    n = len(vertex_labels)
    pos01 = _force_layout(n, [e for e in edges if e[0] != e[1]], seed)
    margin = 70.0
    scale = SIZE - 2 * margin
    pts = [(margin + x * scale, margin + y * scale) for x, y in pos01]
    parts = [_HEADER, f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>\n']
    # group parallel edges so each gets its own curvature
    bucket: Dict[Tuple[int, int], int] = {}
    for a, b in edges:
        if a == b:
            x, y = pts[a]
            parts.append(
                f'<circle cx="{_fmt(x + 18)}" cy="{_fmt(y)}" r="14" fill="none" '
                'stroke="black" stroke-width="1.5"/>\n'
            )
            continue
        key = (min(a, b), max(a, b))
        idx = bucket.get(key, 0)
        bucket[key] = idx + 1
        (x1, y1), (x2, y2) = pts[a], pts[b]
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        d = math.sqrt(dx * dx + dy * dy) + 1e-9
        # offsets 0, +1, -1, +2, ... perpendicular to the chord
        off = (0, 1, -1, 2, -2, 3, -3)[idx % 7] * 26.0
        cx = mx - dy / d * off
        cy = my + dx / d * off
        parts.append(
            f'<path d="M {_fmt(x1)} {_fmt(y1)} Q {_fmt(cx)} {_fmt(cy)} '
            f'{_fmt(x2)} {_fmt(y2)}" fill="none" stroke="black" '
            'stroke-width="1.5"/>\n'
        )
    for i, (x, y) in enumerate(pts):
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="black"/>\n'
        )
        parts.append(_text(x, y - 12, vertex_labels[i], size=12))
        if vertex_notes and i in vertex_notes:
            parts.append(_text(x, y + 22, vertex_notes[i], size=10))
    if title:
        parts.append(_text(SIZE / 2, 28, title, size=16))
    parts.append("</svg>\n")
    return "".join(parts)

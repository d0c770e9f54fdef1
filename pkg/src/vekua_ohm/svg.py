"""Minimal static SVG output: streamline polylines with arrowheads over the unit disk."""
import math

SIZE = 480
MARGIN = 20


def _fmt(v):
    return f"{v:.3f}"


def _to_px(x1, x2, size, margin):
    half = (size - 2 * margin) / 2.0
    return margin + (x1 + 1.0) * half, margin + (1.0 - x2) * half


def _arrowhead(p, q, size, margin, length=6.0, width=3.0):
    (ax, ay), (bx, by) = _to_px(*p, size, margin), _to_px(*q, size, margin)
    dx, dy = bx - ax, by - ay
    n = math.hypot(dx, dy)
    if n == 0.0:
        return None
    ux, uy = dx / n, dy / n
    tip = (bx, by)
    left = (bx - length * ux + width * uy, by - length * uy - width * ux)
    right = (bx - length * ux - width * uy, by - length * uy + width * ux)
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (tip, left, right))


def render_streamlines(lines, size=SIZE, margin=MARGIN, arrow_every=25, title=None):
    """SVG text for a list of (n, 2) point arrays in the unit disk.

    An arrowhead is drawn at every ``arrow_every``-th vertex, pointing along
    the stored point order.
    """
    half = (size - 2 * margin) / 2.0
    c = margin + half
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"  <title>{title}</title>")
    out.append(f'  <circle cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(half)}" fill="none" stroke="#888" />')
    for pts in lines:
        if len(pts) < 2:
            continue
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_to_px(a, b, size, margin) for a, b in pts))
        out.append(f'  <polyline points="{coords}" fill="none" stroke="#1f4e99" stroke-width="1" />')
        for k in range(arrow_every, len(pts), arrow_every):
            head = _arrowhead(pts[k - 1], pts[k], size, margin)
            if head:
                out.append(f'  <polygon points="{head}" fill="#1f4e99" />')
    out.append("</svg>")
    return "\n".join(out) + "\n"

"""SVG pictures of cones in ``N^1(X)`` for Picard rank 2.

Regions are drawn in the fixed viewport ``[-2, 2]^2``.  Each closed piece
is clipped to the viewport exactly (Sutherland-Hodgman over Fractions) and
filled with a hatch.  Boundary segments are classified from the region
itself: a segment whose midpoint lies in the region is a closed boundary
(solid); one whose midpoint lies outside is an excluded boundary (dashed);
a segment with region on both sides is interior and is not stroked.
Output is a pure function of the input, byte for byte.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .cones import ConeUnion, POCone, member
from .exceptions import UnsupportedRank
from .fan import ClassLattice, Fan, class_lattice
from .nerve import ObstructionTable, obstruction_table
from .qample import _check_q, obstruction_region, q_ample_cone

VIEW = Fraction(2)
SIZE = 400
# offset used to probe the two sides of a boundary segment; far smaller than
# the gap between distinct lines of small integer slope at distance >= 1
_EPS = Fraction(1, 10**6)

_SQUARE = [(-VIEW, -VIEW), (VIEW, -VIEW), (VIEW, VIEW), (-VIEW, VIEW)]


def _clip(poly, normal):
    """Clip a convex polygon to ``normal . x >= 0`` (Sutherland-Hodgman)."""
    def val(p):
        return normal[0] * p[0] + normal[1] * p[1]

    out = []
    for k, cur in enumerate(poly):
        prev = poly[k - 1]
        vc, vp = val(cur), val(prev)
        if vc >= 0:
            if vp < 0:
                t = vp / (vp - vc)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
            out.append(cur)
        elif vp >= 0:
            t = vp / (vp - vc)
            out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
    deduped = []
    for p in out:
        if not deduped or deduped[-1] != p:
            deduped.append(p)
    if len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped


def clip_cone(cone: POCone) -> list:
    """Vertices of ``closure(cone)`` intersected with the viewport."""
    poly = list(_SQUARE)
    for normal, _ in cone.constraints:
        poly = _clip(poly, [Fraction(x) for x in normal])
        if not poly:
            break
    return poly


def _boundary_segments(cone: POCone, poly: list) -> list:
    """Polygon edges lying on one of the cone's constraint lines."""
    segs = []
    for k, a in enumerate(poly):
        b = poly[(k + 1) % len(poly)]
        for normal, _ in cone.constraints:
            if all(normal[0] * p[0] + normal[1] * p[1] == 0 for p in (a, b)):
                segs.append((a, b, tuple(normal)))
                break
    return segs


def _px(x: Fraction) -> str:
    return f"{float((x + VIEW) * SIZE / (2 * VIEW)):.3f}"


def _py(y: Fraction) -> str:
    return f"{float((VIEW - y) * SIZE / (2 * VIEW)):.3f}"


def _points(poly) -> str:
    return " ".join(f"{_px(x)},{_py(y)}" for x, y in poly)


def render(region: ConeUnion, pieces, title: str) -> str:
    """SVG for a region given as a membership union plus closed pieces to fill."""
    if region.dim != 2:
        raise UnsupportedRank(f"figures need Picard rank 2, got {region.dim}")
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        "<defs>",
        '<pattern id="hatch" width="8" height="8" patternUnits="userSpaceOnUse" '
        'patternTransform="rotate(45)">',
        '<line x1="0" y1="0" x2="0" y2="8" stroke="#3465a4" stroke-width="1.5"/>',
        "</pattern>",
        "</defs>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>',
        f'<line x1="0" y1="{SIZE // 2}" x2="{SIZE}" y2="{SIZE // 2}" stroke="#bbbbbb"/>',
        f'<line x1="{SIZE // 2}" y1="0" x2="{SIZE // 2}" y2="{SIZE}" stroke="#bbbbbb"/>',
    ]
    strokes = set()
    for piece in pieces:
        poly = clip_cone(piece)
        if len(poly) < 3:
            continue
        lines.append(f'<polygon points="{_points(poly)}" fill="url(#hatch)" fill-opacity="0.8" stroke="none"/>')
        for a, b, normal in _boundary_segments(piece, poly):
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            plus = (mid[0] + _EPS * normal[0], mid[1] + _EPS * normal[1])
            minus = (mid[0] - _EPS * normal[0], mid[1] - _EPS * normal[1])
            if member(plus, region) and member(minus, region):
                continue
            style = "solid" if member(mid, region) else "dashed"
            key = tuple(sorted([a, b]))
            strokes.add((key, style))
    for (a, b), style in sorted(strokes):
        dash = ' stroke-dasharray="6,4"' if style == "dashed" else ""
        lines.append(
            f'<line x1="{_px(a[0])}" y1="{_py(a[1])}" x2="{_px(b[0])}" y2="{_py(b[1])}" '
            f'stroke="black" stroke-width="2"{dash}/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_figure(
    fan: Fan,
    q: int,
    what: str = "qample",
    lattice: Optional[ClassLattice] = None,
    table: Optional[ObstructionTable] = None,
) -> str:
    """SVG of ``Amp_q`` (``what="qample"``) or of the closed obstruction
    images ``[closure(O_alpha)]`` for degrees ``>= q`` (``what="obstruction"``)."""
    lattice = lattice if lattice is not None else class_lattice(fan)
    if lattice.rank != 2:
        raise UnsupportedRank(f"figures need Picard rank 2, got {lattice.rank}")
    q = _check_q(fan, q)
    table = table if table is not None else obstruction_table(fan)
    if what == "qample":
        amp = q_ample_cone(fan, q, table, lattice)
        return render(amp.cells, amp.closed_pieces, f"Amp_{q}")
    if what == "obstruction":
        region = obstruction_region(fan, q, table, lattice)
        union = region.union(2)
        return render(union, region.closed_images, f"closed obstruction images, degrees &gt;= {q}")
    raise ValueError(f"unknown figure kind {what!r}; use 'qample' or 'obstruction'")

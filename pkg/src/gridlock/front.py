"""Explicit Legendrian front of a grid, used to cross-check corner counts.

The knot is drawn as a closed polygon through the marking centres, rotated
45 degrees clockwise into front coordinates ``(u, z) = (x + y, y - x)``.
Crossings are found by intersecting every pair of polygon edges; at each one
the edge of smaller slope ``dz/du`` is in front.  Cusps are the vertices at
which the polygon reverses its ``u`` direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .grid import GridDiagram, row_successor


@dataclass(frozen=True)
class Front:
    vertices: tuple[tuple[int, int], ...]  # (u, z), doubled coordinates, in traversal order

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


def front_of(g: GridDiagram) -> Front:
    """Polygon of the oriented knot, starting at the X of row 1."""
    succ = row_successor(g)
    x0, o0 = g.x0, g.o0
    o_row = {c: r for r, c in enumerate(o0)}
    pts = []
    r = 0
    while True:
        # X of row r, then the O in its column, then move along that row
        cx = x0[r]
        pts.append((2 * cx + 1, 2 * r + 1))
        ro = o_row[cx]
        pts.append((2 * cx + 1, 2 * ro + 1))
        r = succ[r]
        if r == 0:
            break
    return Front(tuple((x + y, y - x) for x, y in pts))


def _intersect(a, b, c, d):
    """Intersection point of open segments ab and cd, or None."""
    (x1, y1), (x2, y2), (x3, y3), (x4, y4) = a, b, c, d
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    if den == 0:
        return None
    t = Fraction((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4), den)
    s = Fraction((x1 - x3) * (y1 - y2) - (y1 - y3) * (x1 - x2), den)
    if 0 < t < 1 and 0 < s < 1:
        return t, s
    return None


def front_writhe(f: Front) -> int:
    edges = f.edges()
    total = 0
    m = len(edges)
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            (a, b), (c, d) = edges[i], edges[j]
            if _intersect(a, b, c, d) is None:
                continue
            va = (b[0] - a[0], b[1] - a[1])
            vc = (d[0] - c[0], d[1] - c[1])
            slope_a = Fraction(va[1], va[0])
            slope_c = Fraction(vc[1], vc[0])
            over, under = (va, vc) if slope_a < slope_c else (vc, va)
            cross = over[0] * under[1] - over[1] * under[0]
            total += 1 if cross > 0 else -1
    return total


def front_cusps(f: Front) -> tuple[int, int, int]:
    """Return (number of cusps, downward cusps, upward cusps)."""
    v = f.vertices
    m = len(v)
    cusps = down = up = 0
    for i in range(m):
        prev, cur, nxt = v[i - 1], v[i], v[(i + 1) % m]
        du_in = cur[0] - prev[0]
        du_out = nxt[0] - cur[0]
        if (du_in > 0) != (du_out > 0):
            cusps += 1
            dz_in = cur[1] - prev[1]
            if dz_in < 0:
                down += 1
            else:
                up += 1
    return cusps, down, up


def front_invariants(g: GridDiagram) -> tuple[int, int]:
    """(tb, r) read off the explicit front: tb = writhe - cusps/2, r = (down - up)/2."""
    f = front_of(g)
    w = front_writhe(f)
    cusps, down, up = front_cusps(f)
    return w - cusps // 2, (down - up) // 2

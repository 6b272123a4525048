"""Grid diagrams: validation, moves, symmetries and classical invariants.

Conventions (used throughout the package):

* rows are numbered bottom-to-top and columns left-to-right, both from 1 in
  the public API; ``x[i - 1]`` is the column of the X in row ``i`` and
  ``o[i - 1]`` likewise for the O;
* the knot runs vertically from X to O inside each column and horizontally
  from O to X inside each row, vertical strands crossing over horizontal ones;
* the Legendrian front is the picture rotated 45 degrees clockwise with the
  corners smoothed or turned into cusps (see :mod:`gridlock.front`).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BadIndex,
    GridParseError,
    Interleaved,
    MultiComponent,
    NotAPermutation,
    SharedCell,
    SizeTooSmall,
    ZeroZero,
)

CORNERS = ("NW", "NE", "SW", "SE")


@dataclass(frozen=True)
class GridDiagram:
    n: int
    x: tuple[int, ...]
    o: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    @property
    def x0(self) -> tuple[int, ...]:
        """Zero-based X columns, indexed by zero-based row."""
        return tuple(c - 1 for c in self.x)

    @property
    def o0(self) -> tuple[int, ...]:
        return tuple(c - 1 for c in self.o)

    def to_dict(self) -> dict:
        d = {"n": self.n, "x": list(self.x), "o": list(self.o)}
        if self.name:
            d["name"] = self.name
        return d

    def digest(self) -> str:
        payload = json.dumps([self.n, list(self.x), list(self.o)])
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __str__(self) -> str:
        rows = []
        for r in reversed(range(self.n)):
            cells = ["."] * self.n
            cells[self.x[r] - 1] = "X"
            cells[self.o[r] - 1] = "O"
            rows.append(" ".join(cells))
        return "\n".join(rows)


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    r: int
    components: int = 1


@dataclass(frozen=True)
class Slope:
    """A point of QP^1; ``(0, 1)`` is infinity."""

    p: int
    q: int

    @property
    def is_infinite(self) -> bool:
        return self.p == 0

    def as_fraction(self):
        from fractions import Fraction

        return None if self.p == 0 else Fraction(self.q, self.p)


def _check_perm(values: Sequence[int], n: int, label: str) -> tuple[int, ...]:
    vals = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise NotAPermutation(f"{label}[{i + 1}] = {v!r} is not an integer")
        vals.append(v)
    if sorted(vals) != list(range(1, n + 1)):
        seen: set[int] = set()
        for i, v in enumerate(vals):
            if not 1 <= v <= n:
                raise NotAPermutation(f"{label}: row {i + 1} has column {v} outside 1..{n}")
            if v in seen:
                raise NotAPermutation(f"{label}: column {v} repeated (row {i + 1})")
            seen.add(v)
    return tuple(vals)


def validate(n: int, x_list: Sequence[int], o_list: Sequence[int], name: str | None = None) -> GridDiagram:
    if not isinstance(n, int) or n < 2:
        raise SizeTooSmall(f"grid size must be at least 2, got {n!r}")
    if len(x_list) != n or len(o_list) != n:
        raise NotAPermutation(f"expected {n} entries, got x:{len(x_list)} o:{len(o_list)}")
    x = _check_perm(x_list, n, "x")
    o = _check_perm(o_list, n, "o")
    for i in range(n):
        if x[i] == o[i]:
            raise SharedCell(i + 1)
    return GridDiagram(n, x, o, name)


def _locate(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _key_position(text: str, key: str) -> tuple[int, int]:
    idx = text.find(f'"{key}"')
    return _locate(text, max(idx, 0))


def parse_grid_json(text: str) -> GridDiagram:
    """Parse the grid JSON format, reporting positions for any deviation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GridParseError(exc.msg, (exc.lineno, exc.colno)) from None
    if not isinstance(data, dict):
        raise GridParseError("top level must be an object", (1, 1))
    allowed = {"n", "x", "o", "name"}
    for key in data:
        if key not in allowed:
            raise GridParseError(f"unknown key {key!r}", _key_position(text, key))
    for key in ("n", "x", "o"):
        if key not in data:
            raise GridParseError(f"missing key {key!r}", (1, 1))
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise GridParseError("'n' must be an integer", _key_position(text, "n"))
    for key in ("x", "o"):
        if not isinstance(data[key], list):
            raise GridParseError(f"{key!r} must be a list", _key_position(text, key))
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise GridParseError("'name' must be a string", _key_position(text, "name"))
    try:
        return validate(n, data["x"], data["o"], name)
    except SharedCell as exc:
        raise SharedCell(exc.row, f"{_fmt_pos(_key_position(text, 'o'))}: row {exc.row}: "
                                  "X and O occupy the same cell") from None
    except (NotAPermutation, SizeTooSmall) as exc:
        key = "x" if str(exc).startswith("x") else "o" if str(exc).startswith("o") else "n"
        raise type(exc)(f"{_fmt_pos(_key_position(text, key))}: {exc}") from None


def _fmt_pos(pos: tuple[int, int]) -> str:
    return f"line {pos[0]}, column {pos[1]}"


def load_grid(path) -> GridDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_grid_json(fh.read())


def dump_grid(g: GridDiagram) -> str:
    return json.dumps(g.to_dict())


# -- structure -------------------------------------------------------------

def row_successor(g: GridDiagram) -> list[int]:
    """Zero-based map row -> next row reached along the oriented knot.

    From the X in row r go vertically to the O in the same column, then
    horizontally to the X of that O's row.
    """
    o_row = [0] * g.n
    for r, c in enumerate(g.o0):
        o_row[c] = r
    return [o_row[c] for c in g.x0]


def trace_components(g: GridDiagram) -> int:
    succ = row_successor(g)
    seen = [False] * g.n
    count = 0
    for start in range(g.n):
        if seen[start]:
            continue
        count += 1
        r = start
        while not seen[r]:
            seen[r] = True
            r = succ[r]
    return count


def _require_knot(g: GridDiagram) -> None:
    k = trace_components(g)
    if k != 1:
        raise MultiComponent(f"grid presents a {k}-component link; a knot is required")


def corner_shapes(g: GridDiagram) -> list[tuple[str, int, int, str]]:
    """Every marking as ``(kind, col, row, shape)``, zero-based.

    ``shape`` names the two directions in which the knot leaves the marking,
    e.g. ``"NE"`` when it continues north and east.
    """
    x_row = {c: r for r, c in enumerate(g.x0)}
    o_row = {c: r for r, c in enumerate(g.o0)}
    out = []
    for r in range(g.n):
        for kind, c, partner_col, col_partner_row in (
            ("X", g.x0[r], g.o0[r], o_row[g.x0[r]]),
            ("O", g.o0[r], g.x0[r], x_row[g.o0[r]]),
        ):
            vert = "N" if col_partner_row > r else "S"
            horiz = "E" if partner_col > c else "W"
            out.append((kind, c, r, vert + horiz))
    return out


def writhe(g: GridDiagram) -> int:
    """Writhe of the planar grid diagram (vertical strands over)."""
    n = g.n
    x0, o0 = g.x0, g.o0
    x_row = {c: r for r, c in enumerate(x0)}
    o_row = {c: r for r, c in enumerate(o0)}
    total = 0
    for r in range(n):
        lo, hi = sorted((x0[r], o0[r]))
        hdir = 1 if x0[r] > o0[r] else -1
        for c in range(lo + 1, hi):
            bot, top = sorted((x_row[c], o_row[c]))
            if bot < r < top:
                vdir = 1 if o_row[c] > x_row[c] else -1
                # over strand vertical (0, vdir), under horizontal (hdir, 0)
                total += -vdir * hdir
    return total


def classical_invariants(g: GridDiagram) -> ClassicalInvariants:
    """tb and r of the Legendrian front, by corner counts.

    The front reverses every grid crossing, so its writhe is minus the grid
    writhe; right cusps sit at corners leaving south/west, left cusps at
    corners leaving north/east.
    """
    _require_knot(g)
    right_cusps = 0
    down = up = 0
    for kind, _c, _r, shape in corner_shapes(g):
        if shape == "SW":
            right_cusps += 1
            if kind == "X":
                down += 1
            else:
                up += 1
        elif shape == "NE":
            if kind == "O":
                down += 1
            else:
                up += 1
    tb = -writhe(g) - right_cusps
    return ClassicalInvariants(tb=tb, r=(down - up) // 2, components=1)


# -- moves -----------------------------------------------------------------

def _block_markings(corner: str) -> dict[str, str]:
    """Markings of the 2x2 stabilization block, keyed by cell position.

    ``corner`` names the empty cell; the X's sit on the other diagonal and
    the O on the named cell's diagonal, opposite to it.
    """
    opposite = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}
    other = {"NW": ("NE", "SW"), "SE": ("NE", "SW"), "NE": ("NW", "SE"), "SW": ("NW", "SE")}
    a, b = other[corner]
    return {corner: ".", opposite[corner]: "O", a: "X", b: "X"}


def stabilize(g: GridDiagram, row: int, corner_type: str) -> GridDiagram:
    """Replace the X in ``row`` (1-based) by a 2x2 block of type ``corner_type``.

    A new row is inserted directly above ``row`` and a new column directly
    right of the X.  See ``STABILIZATION_EFFECT`` for what each type does to
    the Legendrian front.
    """
    if corner_type not in CORNERS:
        raise ValueError(f"corner type must be one of {CORNERS}")
    if not 1 <= row <= g.n:
        raise BadIndex(f"row {row} outside 1..{g.n}")
    n = g.n
    r = row - 1
    c = g.x0[r]
    marks = _block_markings(corner_type)
    cell = {"SW": (c, r), "SE": (c + 1, r), "NW": (c, r + 1), "NE": (c + 1, r + 1)}

    def shift_col(col: int) -> int:
        return col + 1 if col > c else col

    new_x: list[int | None] = [None] * (n + 1)
    new_o: list[int | None] = [None] * (n + 1)
    for rr in range(n):
        if rr == r:
            continue
        nr = rr + 1 if rr > r else rr
        new_x[nr] = shift_col(g.x0[rr])
        new_o[nr] = shift_col(g.o0[rr])
    for pos, m in marks.items():
        col, rw = cell[pos]
        if m == "X":
            new_x[rw] = col
        elif m == "O":
            new_o[rw] = col
    # the original row's O and column's O go to whichever new row/column lacks one
    old_row_o = shift_col(g.o0[r])
    for rw in (r, r + 1):
        if new_o[rw] is None:
            new_o[rw] = old_row_o
    o_row_of_c = g.o0.index(c)
    target_row = o_row_of_c + 1 if o_row_of_c > r else o_row_of_c
    used_cols = {new_o[rw] for rw in range(n + 1) if rw != target_row and new_o[rw] is not None}
    free_col = next(col for col in (c, c + 1) if col not in used_cols)
    new_o[target_row] = free_col
    return validate(n + 1, [v + 1 for v in new_x], [v + 1 for v in new_o], g.name)


def destabilization(g: GridDiagram) -> tuple[GridDiagram, int, str] | None:
    """Find some (grid, row, type) such that ``stabilize(grid, row, type) == g``."""
    if g.n < 3:
        return None
    for r in range(g.n - 1):
        for c in range(g.n - 1):
            for corner in CORNERS:
                marks = _block_markings(corner)
                cell = {"SW": (c, r), "SE": (c + 1, r), "NW": (c, r + 1), "NE": (c + 1, r + 1)}
                ok = True
                for pos, m in marks.items():
                    col, rw = cell[pos]
                    has = "X" if g.x0[rw] == col else "O" if g.o0[rw] == col else "."
                    if has != m:
                        ok = False
                        break
                if not ok:
                    continue
                cand = _collapse(g, r, c)
                if cand is not None and stabilize(cand, r + 1, corner) == g:
                    return cand, r + 1, corner
    return None


def _collapse(g: GridDiagram, r: int, c: int) -> GridDiagram | None:
    """Delete row r+1 and column c+1, putting an X at (c, r)."""
    n = g.n
    rows = [rr for rr in range(n) if rr != r + 1]

    def col_map(col: int) -> int:
        return col - 1 if col > c else col

    new_x, new_o = [], []
    for rr in rows:
        if rr == r:
            new_x.append(c)
            # the O of the collapsed pair of rows that lies outside the block
            outside = [g.o0[q] for q in (r, r + 1) if g.o0[q] not in (c, c + 1)]
            if len(outside) != 1:
                return None
            new_o.append(col_map(outside[0]))
        else:
            xo = g.x0[rr]
            oo = g.o0[rr]
            if xo in (c, c + 1):
                return None
            new_x.append(col_map(xo))
            new_o.append(col_map(oo) if oo not in (c, c + 1) else c)
    try:
        return validate(n - 1, [v + 1 for v in new_x], [v + 1 for v in new_o], g.name)
    except Exception:
        return None


def _column_interval(g: GridDiagram, col0: int) -> tuple[int, int]:
    rx = g.x0.index(col0)
    ro = g.o0.index(col0)
    return (rx, ro) if rx < ro else (ro, rx)


def commute(g: GridDiagram, column_index: int) -> GridDiagram:
    """Swap columns ``column_index`` and ``column_index + 1`` (1-based)."""
    if not 1 <= column_index < g.n:
        raise BadIndex(f"column {column_index} has no right neighbour in a grid of size {g.n}")
    a, b = column_index - 1, column_index
    (a0, a1), (b0, b1) = _column_interval(g, a), _column_interval(g, b)
    disjoint = a1 < b0 or b1 < a0
    nested = (a0 < b0 and b1 < a1) or (b0 < a0 and a1 < b1)
    if not (disjoint or nested):
        raise Interleaved(f"columns {column_index} and {column_index + 1} are interleaved")
    swap = {a + 1: b + 1, b + 1: a + 1}
    return GridDiagram(g.n, tuple(swap.get(v, v) for v in g.x), tuple(swap.get(v, v) for v in g.o), g.name)


def commute_rows(g: GridDiagram, row_index: int) -> GridDiagram:
    """Swap rows ``row_index`` and ``row_index + 1`` (1-based)."""
    if not 1 <= row_index < g.n:
        raise BadIndex(f"row {row_index} has no upper neighbour in a grid of size {g.n}")
    a, b = row_index - 1, row_index
    ia = sorted((g.x0[a], g.o0[a]))
    ib = sorted((g.x0[b], g.o0[b]))
    disjoint = ia[1] < ib[0] or ib[1] < ia[0]
    nested = (ia[0] < ib[0] and ib[1] < ia[1]) or (ib[0] < ia[0] and ia[1] < ib[1])
    if not (disjoint or nested):
        raise Interleaved(f"rows {row_index} and {row_index + 1} are interleaved")
    x, o = list(g.x), list(g.o)
    x[a], x[b] = x[b], x[a]
    o[a], o[b] = o[b], o[a]
    return GridDiagram(g.n, tuple(x), tuple(o), g.name)


def mirror(g: GridDiagram) -> GridDiagram:
    """Reflect left-right; presents the mirror knot."""
    m = g.n + 1
    return GridDiagram(g.n, tuple(m - c for c in g.x), tuple(m - c for c in g.o), g.name)


def reverse(g: GridDiagram) -> GridDiagram:
    """Swap X and O; presents the knot with reversed orientation."""
    return GridDiagram(g.n, g.o, g.x, g.name)


def rotate_half_turn(g: GridDiagram) -> GridDiagram:
    """Rotate the grid by 180 degrees (an isotopy of the presented knot)."""
    m = g.n + 1
    return GridDiagram(g.n, tuple(m - c for c in reversed(g.x)), tuple(m - c for c in reversed(g.o)), g.name)


def slope_normalize(p: int, q: int) -> Slope:
    if p == 0 and q == 0:
        raise ZeroZero("[0 : 0] is not a point of QP^1")
    if p == 0:
        return Slope(0, 1)
    d = math.gcd(p, q)
    p, q = p // d, q // d
    if p < 0:
        p, q = -p, -q
    return Slope(p, q)

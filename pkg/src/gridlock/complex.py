"""Grid chain complexes: generators, bigradings and rectangle differentials.

Gradings use the planar corner counts

    M_O(x) = I(x, x) - 2 J(x, O) + I(O, O) + 1,
    A(x)   = (M_O(x) - M_X(x) - (n - 1)) / 2,

where ``I(P, Q)`` counts pairs (p, q) with p strictly south-west of q and
``J`` is its symmetrization.  Because ``I(x, x)`` cancels, the Alexander
grading is a sum of one term per state point, which is what makes pruned
enumeration of an Alexander window possible.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, MultiComponent, NotAComplex, NotDeconvolvable, WindowTooNarrow
from .f2 import F2Matrix, FilteredReduction, rank, square_is_zero
from .grid import GridDiagram, trace_components

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8

Bigrading = tuple[int, int]


@dataclass(frozen=True)
class GridState:
    perm: tuple[int, ...]  # perm[i] = horizontal line of the point on vertical line i (0-based)
    maslov: int
    alexander: int


@dataclass(frozen=True)
class GradingTables:
    """Per-point corner counts: ``o_corner[i, y]`` = #O's north-east plus south-west of (i, y)."""

    n: int
    o_corner: np.ndarray
    x_corner: np.ndarray
    o_const: int  # I(O, O) + 1
    x_const: int
    a2_const: int  # constant term of the doubled Alexander grading

    @property
    def a2_weights(self) -> np.ndarray:
        return self.x_corner - self.o_corner


def _pair_count(cols: Sequence[int]) -> int:
    """I(P, P) for markings one per row at the given columns."""
    n = len(cols)
    return sum(1 for r in range(n) for s in range(r + 1, n) if cols[r] < cols[s])


def grading_tables(g: GridDiagram) -> GradingTables:
    n = g.n
    tables = []
    for cols in (g.o0, g.x0):
        t = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for y in range(n):
                ne = sum(1 for r, c in enumerate(cols) if c >= i and r >= y)
                sw = sum(1 for r, c in enumerate(cols) if c < i and r < y)
                t[i, y] = ne + sw
        tables.append(t)
    ioo, ixx = _pair_count(g.o0), _pair_count(g.x0)
    return GradingTables(n, tables[0], tables[1], ioo + 1, ixx + 1, ioo - ixx - (n - 1))


def gradings(g: GridDiagram, state_perm: Sequence[int]) -> tuple[int, int]:
    """(Maslov, Alexander) of the state with the given zero-based permutation.

    The Alexander grading is returned as an integer for knots; for links the
    doubled value is odd for some states and a ``ValueError`` is raised.
    """
    t = grading_tables(g)
    p = np.asarray([state_perm], dtype=np.int8)
    m = int(kernels.maslov(p, t.o_corner, t.o_const)[0])
    mx = int(kernels.maslov(p, t.x_corner, t.x_const)[0])
    a2 = m - mx - (g.n - 1)
    if a2 % 2:
        raise ValueError("half-integral Alexander grading; grid is a link")
    return m, a2 // 2


class StateTable(Sequence[GridState]):
    """Generators stored column-wise; indexing yields :class:`GridState`."""

    def __init__(self, grid: GridDiagram, perms: np.ndarray, maslov: np.ndarray, alexander: np.ndarray,
                 window: tuple[int, int] | None = None):
        self.grid = grid
        self.perms = perms
        self.maslov = maslov
        self.alexander = alexander
        self.window = window
        self.codes = kernels.encode(perms, grid.n)

    def __len__(self) -> int:
        return len(self.perms)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[i] for i in range(*k.indices(len(self)))]
        return GridState(tuple(int(v) for v in self.perms[k]), int(self.maslov[k]), int(self.alexander[k]))

    def __iter__(self) -> Iterator[GridState]:
        for k in range(len(self)):
            yield self[k]

    def index_of(self, perm: Sequence[int]) -> int | None:
        code = 0
        for v in perm:
            code = code * self.grid.n + int(v)
        k = int(np.searchsorted(self.codes, code))
        if k < len(self.codes) and self.codes[k] == code:
            return k
        return None

    def select(self, mask: np.ndarray) -> "StateTable":
        return StateTable(self.grid, self.perms[mask], self.maslov[mask], self.alexander[mask], self.window)


def _require_knot(g: GridDiagram) -> None:
    if trace_components(g) != 1:
        raise MultiComponent("a single-component grid is required")


def enumerate_states(g: GridDiagram, alexander_window: tuple[int, int] | None = None,
                     budget: int = DEFAULT_BUDGET, maslov_values: Sequence[int] | None = None) -> StateTable:
    """All grid states, or those with Alexander grading in the closed window.

    States come out in lexicographic order of their permutations.  More than
    ``budget`` states (counted before any Maslov filtering) raises
    :class:`BudgetExceeded`.
    """
    _require_knot(g)
    t = grading_tables(g)
    w = t.a2_weights
    if alexander_window is None:
        lo2, hi2 = -(1 << 60), 1 << 60
    else:
        a, b = alexander_window
        lo2, hi2 = 2 * a - t.a2_const, 2 * b - t.a2_const
    perms, sums, overflow = kernels.enumerate_states(w, lo2, hi2, budget)
    if overflow:
        raise BudgetExceeded(f"more than {budget} states in window {alexander_window}", len(perms), budget)
    a2 = sums + t.a2_const
    if np.any(a2 % 2):
        raise MultiComponent("half-integral Alexander grading; grid is a link")
    m = kernels.maslov(perms, t.o_corner, t.o_const)
    table = StateTable(g, perms, m, a2 // 2, alexander_window)
    if maslov_values is not None:
        table = table.select(np.isin(m, np.asarray(list(maslov_values), dtype=np.int64)))
    return table


def _rectangles(states: StateTable, allow_x: bool, threads: int = 1):
    g = states.grid
    xs = np.asarray(g.x0, dtype=np.int64)
    os_ = np.asarray(g.o0, dtype=np.int64)
    n_states = len(states)
    if threads <= 1 or n_states < 2048:
        parts = [kernels.rectangles(states.perms, states.codes, xs, os_, allow_x, 0, n_states)]
    else:
        bounds = np.linspace(0, n_states, threads + 1).astype(int)
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(
                lambda lo_hi: kernels.rectangles(states.perms, states.codes, xs, os_, allow_x, lo_hi[0], lo_hi[1]),
                zip(bounds[:-1], bounds[1:])))
    src = np.concatenate([p[0] for p in parts])
    tgt = np.concatenate([p[1] for p in parts])
    wts = np.concatenate([p[2] for p in parts])
    # two rectangles joining the same pair cancel mod 2
    key = src * n_states + tgt
    uniq, first, counts = np.unique(key, return_index=True, return_counts=True)
    keep = first[counts % 2 == 1]
    keep.sort()
    return src[keep], tgt[keep], wts[keep]


@dataclass
class BigradedComplex:
    """Grid states bucketed by (Maslov, Alexander) with F2 differentials.

    ``tilde`` holds the entries of rectangles avoiding all markings;
    ``filtered``, when present, those avoiding O's with any number of X's,
    the weight of an entry being the number of X's (its Alexander drop).
    With a window, only matrices interior to the window are exact.
    """

    grid: GridDiagram
    states: StateTable
    tilde: tuple[np.ndarray, np.ndarray]
    filtered: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def windowed(self) -> bool:
        return self.states.window is not None

    @property
    def maslov(self) -> np.ndarray:
        return self.states.maslov

    @property
    def alexander(self) -> np.ndarray:
        return self.states.alexander

    @cached_property
    def buckets(self) -> dict[Bigrading, np.ndarray]:
        out: dict[Bigrading, list[int]] = {}
        for k, (m, a) in enumerate(zip(self.maslov.tolist(), self.alexander.tolist())):
            out.setdefault((m, a), []).append(k)
        return {bg: np.array(v, dtype=np.int64) for bg, v in sorted(out.items())}

    @cached_property
    def _slot(self) -> np.ndarray:
        slot = np.empty(len(self.states), dtype=np.int64)
        for idx in self.buckets.values():
            slot[idx] = np.arange(len(idx))
        return slot

    def filtered_entries(self):
        if self.filtered is None:
            raise ValueError("complex was built without the filtered differential")
        return self.filtered

    def matrix(self, bigrading: Bigrading, weight: int = 0) -> F2Matrix:
        """Matrix of the differential from ``bigrading`` to (m - 1, a - weight).

        Weight 0 is the tilde differential; other weights need the filtered
        entries.
        """
        key = ("matrix", bigrading, weight)
        if key in self._cache:
            return self._cache[key]
        m, a = bigrading
        src_idx = self.buckets.get(bigrading, np.empty(0, dtype=np.int64))
        tgt_idx = self.buckets.get((m - 1, a - weight), np.empty(0, dtype=np.int64))
        if weight == 0:
            src, tgt = self.tilde
            sel = np.ones(len(src), dtype=bool)
        else:
            src, tgt, w = self.filtered_entries()
            sel = w == weight
        sel &= (self.maslov[src] == m) & (self.alexander[src] == a)
        rows = self._slot[tgt[sel]]
        cols = self._slot[src[sel]]
        mat = F2Matrix.from_entries(len(tgt_idx), len(src_idx), zip(rows.tolist(), cols.tolist()))
        self._cache[key] = mat
        return mat

    def tilde_dims(self) -> dict[Bigrading, int]:
        """Homology of the tilde complex bucket by bucket (exact inside the window)."""
        dims = {}
        for (m, a), idx in self.buckets.items():
            d_out = self.matrix((m, a))
            d_in = self.matrix((m + 1, a))
            h = len(idx) - rank(d_out) - rank(d_in)
            if h:
                dims[(m, a)] = h
        return dims

    def square_is_zero(self, certify: bool = True) -> bool:
        """Check d^2 = 0 for the tilde and (if present) total filtered differential.

        On a windowed complex the check is not a certificate and
        :class:`WindowTooNarrow` is raised unless ``certify`` is False.
        """
        if self.windowed and certify:
            raise WindowTooNarrow("d^2 = 0 cannot be certified on a windowed complex")
        n = len(self.states)
        ok = square_is_zero(n, *self.tilde)
        if self.filtered is not None:
            ok = ok and square_is_zero(n, self.filtered[0], self.filtered[1])
        return ok

    def reduction(self) -> FilteredReduction:
        if "reduction" not in self._cache:
            src, tgt, _w = self.filtered_entries()
            self._cache["reduction"] = FilteredReduction(self.maslov, self.alexander, src, tgt)
        return self._cache["reduction"]


def tilde_differential(g: GridDiagram, states: StateTable | None = None, threads: int = 1) -> BigradedComplex:
    if states is None:
        states = enumerate_states(g)
    src, tgt, _w = _rectangles(states, allow_x=False, threads=threads)
    _check_degrees(states, src, tgt, np.zeros(len(src), dtype=np.int64))
    return BigradedComplex(g, states, (src, tgt))


def filtered_differential(g: GridDiagram, states: StateTable | None = None, threads: int = 1) -> BigradedComplex:
    if states is None:
        states = enumerate_states(g)
    src, tgt, w = _rectangles(states, allow_x=True, threads=threads)
    _check_degrees(states, src, tgt, w)
    zero = w == 0
    return BigradedComplex(g, states, (src[zero], tgt[zero]), (src, tgt, w))


def _check_degrees(states: StateTable, src, tgt, w) -> None:
    if len(src) == 0:
        return
    if np.any(states.maslov[tgt] != states.maslov[src] - 1):
        raise NotAComplex("rectangle entry does not lower the Maslov grading by one")
    if np.any(states.alexander[tgt] != states.alexander[src] - w):
        raise NotAComplex("rectangle entry does not lower the Alexander grading by its X count")


def hat_dims_from_tilde(tilde_dims: Mapping[Bigrading, int], n: int,
                        min_alexander: int | None = None) -> dict[Bigrading, int]:
    """Undo the tensor factor V^(n-1), V = F(0,0) + F(-1,-1).

    tilde(d, s) = sum_k C(n-1, k) hat(d + k, s + k), solved from the top
    Alexander grading down.  With ``min_alexander`` the input is taken to be
    exact only for s >= min_alexander (a windowed computation reaching the
    top grading) and only that part is solved for and checked.
    """
    floor = min_alexander if min_alexander is not None else -(1 << 60)
    tilde = {bg: v for bg, v in tilde_dims.items() if v and bg[1] >= floor}
    if not tilde:
        return {}
    hat: dict[Bigrading, int] = {}
    for d, s in sorted(set(tilde) | _shadows(tilde, n), key=lambda b: (-b[1], -b[0])):
        if s < floor:
            continue
        val = tilde.get((d, s), 0)
        for k in range(1, n):
            val -= comb(n - 1, k) * hat.get((d + k, s + k), 0)
        if val < 0:
            raise NotDeconvolvable(f"negative dimension {val} at {(d, s)}")
        if val:
            hat[(d, s)] = val
    back = {bg: v for bg, v in convolve(hat, n).items() if bg[1] >= floor}
    if back != tilde:
        raise NotDeconvolvable("tilde dimensions are not a V-tensor power of any table")
    return hat


def _shadows(tilde: Mapping[Bigrading, int], n: int) -> set[Bigrading]:
    return {(d + k, s + k) for (d, s) in tilde for k in range(n)}


def convolve(hat: Mapping[Bigrading, int], n: int) -> dict[Bigrading, int]:
    out: dict[Bigrading, int] = {}
    for (d, s), v in hat.items():
        for k in range(n):
            key = (d - k, s - k)
            out[key] = out.get(key, 0) + comb(n - 1, k) * v
    return {bg: v for bg, v in out.items() if v}


def hat_dims(g: GridDiagram, threads: int = 1, budget: int = DEFAULT_BUDGET) -> dict[Bigrading, int]:
    c = tilde_differential(g, enumerate_states(g, budget=budget), threads=threads)
    return hat_dims_from_tilde(c.tilde_dims(), g.n)


def max_alexander(g: GridDiagram) -> int:
    """Largest Alexander grading of any state (an assignment problem)."""
    from scipy.optimize import linear_sum_assignment

    t = grading_tables(g)
    w = t.a2_weights
    rows, cols = linear_sum_assignment(w, maximize=True)
    a2 = int(w[rows, cols].sum()) + t.a2_const
    return a2 // 2


def dims_to_json(dims: Mapping[Bigrading, int]) -> dict[str, int]:
    return {f"({d},{s})": v for (d, s), v in sorted(dims.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))}


def dims_from_json(data: Mapping[str, int]) -> dict[Bigrading, int]:
    out = {}
    for key, v in data.items():
        d, s = key.strip("()").split(",")
        out[(int(d), int(s))] = int(v)
    return out

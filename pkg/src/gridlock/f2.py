"""Sparse linear algebra over F2 and spectral-sequence page reduction.

Matrix rows are Python ints used as packed bit rows (bit ``c`` set means
entry ``(row, c)`` is 1); XOR of two rows is then a single big-int op.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimMismatch, NoSolution, NotAComplex


class F2Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [0] * nrows
        if len(rows) != nrows:
            raise DimMismatch(f"expected {nrows} rows, got {len(rows)}")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError("row bits out of range")
        self.rows = tuple(rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int]]) -> "F2Matrix":
        """Build from (row, col) positions; repeated positions cancel mod 2."""
        rows = [0] * nrows
        for r, c in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            rows[r] ^= 1 << c
        return cls(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, a) -> "F2Matrix":
        a = np.asarray(a, dtype=np.int64) % 2
        if a.ndim != 2:
            raise DimMismatch("dense matrix must be 2-d")
        nrows, ncols = a.shape
        rows = []
        for r in range(nrows):
            v = 0
            for c in np.flatnonzero(a[r]):
                v |= 1 << int(c)
            rows.append(v)
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entries(self) -> list[tuple[int, int]]:
        out = []
        for r, bits in enumerate(self.rows):
            out.extend((r, c) for c in _bits(bits))
        return out

    def nnz(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for r, c in self.entries():
            a[r, c] = 1
        return a

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_entries(self.ncols, self.nrows, ((c, r) for r, c in self.entries()))

    def matvec(self, v) -> np.ndarray:
        x = _to_bits(v, self.ncols)
        return np.array([(r & x).bit_count() & 1 for r in self.rows], dtype=np.uint8)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise DimMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for bits in self.rows:
            acc = 0
            for c in _bits(bits):
                acc ^= other.rows[c]
            out.append(acc)
        return F2Matrix(self.nrows, other.ncols, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, F2Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def dump(self) -> str:
        """One line per row: the sorted column indices of its nonzero entries."""
        return "\n".join(" ".join(str(c) for c in _bits(r)) for r in self.rows)


def _bits(v: int) -> list[int]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def _to_bits(v, length: int) -> int:
    if isinstance(v, int):
        return v
    arr = np.asarray(v, dtype=np.int64)
    if arr.shape != (length,):
        raise DimMismatch(f"vector of length {arr.shape} where {length} expected")
    bits = 0
    for i in np.flatnonzero(arr % 2):
        bits |= 1 << int(i)
    return bits


def _xor_basis(vectors: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            piv = basis.get(h)
            if piv is None:
                basis[h] = v
                break
            v ^= piv
    return basis


def rank(m: F2Matrix) -> int:
    # sparsest rows first keeps fill down; ties go to the lower row index
    order = sorted(range(m.nrows), key=lambda r: (m.rows[r].bit_count(), r))
    return len(_xor_basis(m.rows[r] for r in order))


def solve(a: F2Matrix, b) -> np.ndarray:
    """Some x with a @ x = b over F2; raises NoSolution when b is not in the image."""
    if len(np.asarray(b)) != a.nrows:
        raise DimMismatch(f"right-hand side has length {len(np.asarray(b))}, matrix has {a.nrows} rows")
    target = _to_bits(b, a.nrows)
    cols = a.transpose().rows
    # basis of the column space, each element tagged with the columns summed into it
    basis: dict[int, tuple[int, int]] = {}
    for j, v in enumerate(cols):
        tag = 1 << j
        while v:
            h = v.bit_length() - 1
            piv = basis.get(h)
            if piv is None:
                basis[h] = (v, tag)
                break
            v ^= piv[0]
            tag ^= piv[1]
    v, tag = target, 0
    while v:
        piv = basis.get(v.bit_length() - 1)
        if piv is None:
            raise NoSolution("right-hand side is not in the column space")
        v ^= piv[0]
        tag ^= piv[1]
    x = np.zeros(a.ncols, dtype=np.uint8)
    for j in _bits(tag):
        x[j] = 1
    if not np.array_equal(a.matvec(x), np.asarray(b, dtype=np.int64) % 2):
        raise AssertionError("solve produced a vector that does not re-multiply to b")
    return x


def in_image(a: F2Matrix, b) -> bool:
    try:
        solve(a, b)
    except NoSolution:
        return False
    return True


def homology_dims(d_in: F2Matrix, d_out: F2Matrix) -> int:
    """dim ker(d_out) - rank(d_in) for  . --d_in--> V --d_out--> ."""
    if d_in.nrows != d_out.ncols:
        raise DimMismatch(f"d_in lands in dimension {d_in.nrows}, d_out starts at {d_out.ncols}")
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out composed with d_in is not zero")
    return d_out.ncols - rank(d_out) - rank(d_in)


def square_is_zero(n: int, src: np.ndarray, tgt: np.ndarray) -> bool:
    """Whether the F2 map with entries ``tgt[k] <- src[k]`` squares to zero."""
    from scipy.sparse import csr_matrix

    if len(src) == 0:
        return True
    d = csr_matrix((np.ones(len(src), dtype=np.int64), (tgt, src)), shape=(n, n))
    d2 = d @ d
    return not np.any(d2.data % 2)


# -- spectral sequence of a filtered complex ----------------------------------

@dataclass
class PageData:
    """Page E_k: a basis per bigrading and the differential d_k.

    ``surviving_basis[(m, a)]`` lists representatives as tuples of generator
    indices in the original state basis; ``d_k[(m, a)]`` maps that list to
    the one at ``(m - 1, a - k)``.
    """

    k: int
    surviving_basis: dict[tuple[int, int], list[tuple[int, ...]]]
    d_k: dict[tuple[int, int], F2Matrix] = field(default_factory=dict)

    def dims(self) -> dict[tuple[int, int], int]:
        return {bg: len(v) for bg, v in self.surviving_basis.items() if v}

    def total_dim(self) -> int:
        return sum(len(v) for v in self.surviving_basis.values())


class FilteredReduction:
    """Filtered change of basis turning the differential into a matching.

    Generators carry a homological degree (``maslov``, lowered by 1 by the
    differential) and a filtration level (``level``, never raised).  Within
    each degree they are ordered by (level, index) and the classic column
    reduction is run; the result pairs each killed generator with the one
    killing it.  A pair whose levels differ by ``j`` is cancelled by the page
    differential d_j, so E_k is spanned by the generators in pairs of jump
    at least ``k`` together with the unpaired ones.  The reduced columns are
    kept as transcripts, which lets a particular cycle be expanded in the new
    basis (see :meth:`expand`).
    """

    def __init__(self, maslov: np.ndarray, level: np.ndarray, src: np.ndarray, tgt: np.ndarray):
        self.maslov = np.asarray(maslov, dtype=np.int64)
        self.level = np.asarray(level, dtype=np.int64)
        n = len(self.maslov)
        if len(src) and np.any(self.maslov[tgt] != self.maslov[src] - 1):
            raise NotAComplex("differential entry does not lower the degree by one")
        if len(src) and np.any(self.level[tgt] > self.level[src]):
            raise NotAComplex("differential entry raises the filtration level")
        if not square_is_zero(n, src, tgt):
            raise NotAComplex("total differential does not square to zero")
        self.groups: dict[int, list[int]] = {}
        for m in sorted(set(self.maslov.tolist())):
            idx = np.flatnonzero(self.maslov == m)
            order = np.lexsort((idx, self.level[idx]))
            self.groups[m] = [int(i) for i in idx[order]]
        self.pos = np.empty(n, dtype=np.int64)
        for members in self.groups.values():
            for p, g in enumerate(members):
                self.pos[g] = p
        boundary: list[int] = [0] * n
        for s, t in zip(src.tolist(), tgt.tolist()):
            boundary[s] ^= 1 << int(self.pos[t])
        # role[g] = ("source", partner, jump) | ("target", partner, jump) | ("free",)
        self.role: list[tuple] = [("free",)] * n
        self.vector: list[int] = [0] * n  # new basis element with leading term g, over g's degree group
        reduced: dict[int, int] = {}
        for m, members in self.groups.items():
            lower = self.groups.get(m - 1, [])
            owner: dict[int, int] = {}
            for p, g in enumerate(members):
                r = boundary[g]
                v = 1 << p
                while r:
                    low = r.bit_length() - 1
                    q = owner.get(low)
                    if q is None:
                        break
                    r ^= reduced[q]
                    v ^= self.vector[q]
                reduced[g] = r
                self.vector[g] = v
                if r:
                    low = r.bit_length() - 1
                    owner[low] = g
                    t = lower[low]
                    jump = int(self.level[g] - self.level[t])
                    self.role[g] = ("source", t, jump)
                    self.role[t] = ("target", g, jump)
        for g, role in enumerate(self.role):
            if role[0] == "target":
                if reduced.get(g):
                    raise NotAComplex("a cancelled generator is also a source; differential is not a complex")
                self.vector[g] = reduced[role[1]]

    def __len__(self) -> int:
        return len(self.maslov)

    def jump(self, g: int) -> int | None:
        role = self.role[g]
        return role[2] if role[0] != "free" else None

    def alive(self, g: int, k: int) -> bool:
        """Whether the basis element led by ``g`` is still present on page E_k."""
        j = self.jump(g)
        return j is None or j >= k

    def representative(self, g: int) -> tuple[int, ...]:
        members = self.groups[int(self.maslov[g])]
        return tuple(sorted(members[p] for p in _bits(self.vector[g])))

    def bigrading(self, g: int) -> tuple[int, int]:
        return int(self.maslov[g]), int(self.level[g])

    def page(self, k: int) -> PageData:
        basis: dict[tuple[int, int], list[int]] = {}
        for members in self.groups.values():
            for g in members:
                if self.alive(g, k):
                    basis.setdefault(self.bigrading(g), []).append(g)
        where = {g: (bg, i) for bg, gs in basis.items() for i, g in enumerate(gs)}
        d: dict[tuple[int, int], F2Matrix] = {}
        for bg, gs in basis.items():
            m, a = bg
            tgt_bg = (m - 1, a - k)
            tgt_list = basis.get(tgt_bg, [])
            ent = []
            for i, g in enumerate(gs):
                role = self.role[g]
                if role[0] == "source" and role[2] == k:
                    tbg, ti = where[role[1]]
                    ent.append((ti, i))
            d[bg] = F2Matrix.from_entries(len(tgt_list), len(gs), ent)
        return PageData(k, {bg: [self.representative(g) for g in gs] for bg, gs in basis.items()}, d)

    def expand(self, generators: Iterable[int]) -> list[int]:
        """Leading terms of the new-basis expansion of a homogeneous chain.

        The chain must lie in a single degree and a single filtration level;
        only the part of the expansion at that level is returned, which is all
        that determines the class on every page.
        """
        gens = sorted(set(int(g) for g in generators))
        if not gens:
            return []
        m = int(self.maslov[gens[0]])
        lvl = int(self.level[gens[0]])
        if any(int(self.maslov[g]) != m or int(self.level[g]) != lvl for g in gens):
            raise ValueError("chain is not homogeneous")
        members = self.groups[m]
        v = 0
        for g in gens:
            v ^= 1 << int(self.pos[g])
        leads = []
        while v:
            top = members[v.bit_length() - 1]
            if int(self.level[top]) < lvl:
                break
            leads.append(top)
            v ^= self.vector[top]
        return leads

    def class_status(self, generators: Iterable[int], k_max: int) -> dict:
        """Fate of the class of a d_0-cycle through pages 1..k_max.

        ``zero_on_e1`` says whether the class vanishes on E_1.  ``delta[k]`` is
        True when d_k kills nothing of it (the class, possibly zero, survives
        to E_{k+1}), False when d_k of it is nonzero, and None once an earlier
        page differential was already nonzero so d_k is not defined on it.
        """
        leads = self.expand(generators)
        first_hit = None
        for g in leads:
            role = self.role[g]
            if role[0] == "source":
                if role[2] == 0:
                    raise ValueError("chain is not a cycle of the associated graded differential")
                first_hit = role[2] if first_hit is None else min(first_hit, role[2])
        zero_on_e1 = all(self.role[g][0] == "target" and self.role[g][2] == 0 for g in leads)
        delta: dict[int, bool | None] = {}
        for k in range(1, k_max + 1):
            if first_hit is None or k < first_hit:
                delta[k] = True
            elif k == first_hit:
                delta[k] = False
            else:
                delta[k] = None
        return {"zero_on_e1": zero_on_e1, "delta": delta, "leads": leads}


def reduce_pages(c, k_max: int) -> list[PageData]:
    """Pages E_1..E_{k_max} of a filtered complex.

    ``c`` is anything with ``maslov`` and ``alexander`` arrays and a
    ``filtered_entries()`` method returning ``(src, tgt, weight)``; a
    :class:`gridlock.complex.BigradedComplex` qualifies.
    """
    red = c.reduction() if hasattr(c, "reduction") else _reduction_of(c)
    return [red.page(k) for k in range(1, k_max + 1)]


def _reduction_of(c) -> FilteredReduction:
    src, tgt, _w = c.filtered_entries()
    return FilteredReduction(c.maslov, c.alexander, src, tgt)

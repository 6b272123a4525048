"""Pure-Python versions of the hot loops.

Every function here has a twin with the same signature in the compiled
``_kernels`` extension; :mod:`gridlock.kernels` picks one at import time.
States are rows of an ``(N, n)`` int8 array: row ``k`` lists, for each
vertical grid line ``i``, the horizontal line ``perm[i]`` holding the point.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def encode(perms: np.ndarray, n: int) -> np.ndarray:
    """Base-n codes; numeric order of codes equals lexicographic order of perms."""
    codes = np.zeros(len(perms), dtype=np.int64)
    for i in range(n):
        codes = codes * n + perms[:, i].astype(np.int64)
    return codes


def enumerate_states(weights: np.ndarray, lo: int, hi: int, cap: int):
    """All permutations p (lexicographic) with lo <= sum_i weights[i, p[i]] <= hi.

    Returns ``(perms, sums, overflowed)``; enumeration stops once more than
    ``cap`` states have been found.
    """
    n = weights.shape[0]
    w = [[int(v) for v in row] for row in weights]
    row_max = [max(r) for r in w]
    row_min = [min(r) for r in w]
    suf_max = [0] * (n + 1)
    suf_min = [0] * (n + 1)
    for i in reversed(range(n)):
        suf_max[i] = suf_max[i + 1] + row_max[i]
        suf_min[i] = suf_min[i + 1] + row_min[i]
    out: list[tuple[int, ...]] = []
    sums: list[int] = []
    perm = [0] * n
    used = [False] * n
    overflow = False

    def rec(i: int, acc: int) -> bool:
        nonlocal overflow
        if i == n:
            if not lo <= acc <= hi:
                return True
            out.append(tuple(perm))
            sums.append(acc)
            if len(out) > cap:
                overflow = True
                return False
            return True
        if acc + suf_max[i] < lo or acc + suf_min[i] > hi:
            return True
        wi = w[i]
        for y in range(n):
            if used[y]:
                continue
            used[y] = True
            perm[i] = y
            ok = rec(i + 1, acc + wi[y])
            used[y] = False
            if not ok:
                return False
        return True

    rec(0, 0)
    arr = np.array(out, dtype=np.int8).reshape(len(out), n)
    return arr, np.array(sums, dtype=np.int64), overflow


def maslov(perms: np.ndarray, corner: np.ndarray, const: int) -> np.ndarray:
    """I(x, x) - sum_i corner[i, p[i]] + const for every state."""
    n = perms.shape[1] if perms.ndim == 2 else 0
    out = np.empty(len(perms), dtype=np.int64)
    c = corner.tolist()
    for k, row in enumerate(perms.tolist()):
        inv = 0
        for i in range(n):
            pi = row[i]
            for j in range(i + 1, n):
                if pi < row[j]:
                    inv += 1
        s = 0
        for i in range(n):
            s += c[i][row[i]]
        out[k] = inv - s + const
    return out


def rectangles(perms: np.ndarray, codes: np.ndarray, xs: np.ndarray, os: np.ndarray,
               allow_x: bool, start: int = 0, stop: int | None = None):
    """Empty rectangles out of states ``start:stop``.

    A rectangle from x to y has its lower-left and upper-right corners in x;
    its interior holds no state point and no O, and no X unless ``allow_x``.
    Returns parallel arrays ``(source, target, weight)`` where weight is the
    number of X's inside; targets missing from ``codes`` are dropped.
    """
    n = len(xs)
    stop = len(perms) if stop is None else stop
    index = {int(c): k for k, c in enumerate(codes.tolist())}
    powers = [n ** (n - 1 - i) for i in range(n)]
    xs_l = [int(v) for v in xs]
    os_l = [int(v) for v in os]
    src: list[int] = []
    tgt: list[int] = []
    wts: list[int] = []
    plist = perms.tolist()
    clist = codes.tolist()
    for k in range(start, stop):
        p = plist[k]
        code = clist[k]
        for i in range(n):
            a = p[i]
            for j in range(i + 1, n):
                b = p[j]
                ycode = code + (b - a) * powers[i] + (a - b) * powers[j]
                for left, right, bot, top in ((i, j, a, b), (j, i + n, b, a)):
                    height = (top - bot) % n
                    # state points strictly inside
                    blocked = False
                    for t in range(left + 1, right):
                        if (p[t % n] - bot) % n < height and p[t % n] != bot:
                            blocked = True
                            break
                    if blocked:
                        continue
                    wx = 0
                    for h in range(height):
                        row = (bot + h) % n
                        oc = os_l[row]
                        if (oc - left) % n < right - left:
                            blocked = True
                            break
                        xc = xs_l[row]
                        if (xc - left) % n < right - left:
                            wx += 1
                    if blocked or (wx and not allow_x):
                        continue
                    tk = index.get(ycode)
                    if tk is None:
                        continue
                    src.append(k)
                    tgt.append(tk)
                    wts.append(wx)
    return (np.array(src, dtype=np.int64), np.array(tgt, dtype=np.int64),
            np.array(wts, dtype=np.int64))

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled twins of the loops in ``_pykernels``; same signatures and outputs."""

import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector

BACKEND = "cython"


def encode(perms, int n):
    cdef cnp.int8_t[:, :] p = np.ascontiguousarray(perms, dtype=np.int8)
    cdef Py_ssize_t N = p.shape[0]
    out = np.zeros(N, dtype=np.int64)
    cdef cnp.int64_t[:] o = out
    cdef Py_ssize_t k, i
    cdef cnp.int64_t c
    for k in range(N):
        c = 0
        for i in range(n):
            c = c * n + p[k, i]
        o[k] = c
    return out


def enumerate_states(weights, long long lo, long long hi, long long cap):
    cdef cnp.int64_t[:, :] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef int n = w.shape[0]
    cdef vector[cnp.int8_t] flat
    cdef vector[cnp.int64_t] sums
    cdef long long suf_max[64]
    cdef long long suf_min[64]
    cdef long long acc[65]
    cdef int perm[64]
    cdef int used[64]
    cdef int i, y, t
    cdef long long mx, mn
    cdef long long count = 0
    cdef bint overflow = False
    if n > 63:
        raise ValueError("grid too large")
    suf_max[n] = 0
    suf_min[n] = 0
    for i in range(n - 1, -1, -1):
        mx = w[i, 0]
        mn = w[i, 0]
        for y in range(1, n):
            if w[i, y] > mx:
                mx = w[i, y]
            if w[i, y] < mn:
                mn = w[i, y]
        suf_max[i] = suf_max[i + 1] + mx
        suf_min[i] = suf_min[i + 1] + mn
    for y in range(n):
        used[y] = 0
    # iterative backtracking; perm[i] holds the candidate currently tried at depth i
    i = 0
    acc[0] = 0
    perm[0] = -1
    with nogil:
        while i >= 0:
            if i == n:
                if lo <= acc[n] <= hi:
                    for t in range(n):
                        flat.push_back(<cnp.int8_t>perm[t])
                    sums.push_back(acc[n])
                    count += 1
                    if count > cap:
                        overflow = True
                        break
                i -= 1
                continue
            if perm[i] >= 0:
                used[perm[i]] = 0
            elif acc[i] + suf_max[i] < lo or acc[i] + suf_min[i] > hi:
                i -= 1
                continue
            y = perm[i] + 1
            while y < n and used[y]:
                y += 1
            if y >= n:
                perm[i] = -1
                i -= 1
                continue
            perm[i] = y
            used[y] = 1
            acc[i + 1] = acc[i] + w[i, y]
            i += 1
            if i < n:
                perm[i] = -1
    N = sums.size()
    arr = np.empty((N, n), dtype=np.int8)
    sarr = np.empty(N, dtype=np.int64)
    cdef cnp.int8_t[:, :] av = arr
    cdef cnp.int64_t[:] sv = sarr
    cdef Py_ssize_t k
    for k in range(<Py_ssize_t>N):
        sv[k] = sums[k]
        for t in range(n):
            av[k, t] = flat[k * n + t]
    return arr, sarr, bool(overflow)


def maslov(perms, corner, long long const):
    cdef cnp.int8_t[:, :] p = np.ascontiguousarray(perms, dtype=np.int8)
    cdef cnp.int64_t[:, :] c = np.ascontiguousarray(corner, dtype=np.int64)
    cdef Py_ssize_t N = p.shape[0]
    cdef int n = p.shape[1]
    out = np.empty(N, dtype=np.int64)
    cdef cnp.int64_t[:] o = out
    cdef Py_ssize_t k
    cdef int i, j
    cdef long long inv, s
    with nogil:
        for k in range(N):
            inv = 0
            s = 0
            for i in range(n):
                s += c[i, p[k, i]]
                for j in range(i + 1, n):
                    if p[k, i] < p[k, j]:
                        inv += 1
            o[k] = inv - s + const
    return out


cdef inline Py_ssize_t _find(const cnp.int64_t[:] codes, cnp.int64_t key) noexcept nogil:
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = codes.shape[0]
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if codes[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    if lo < codes.shape[0] and codes[lo] == key:
        return lo
    return -1


def rectangles(perms, codes, xs, os, bint allow_x, Py_ssize_t start=0, stop=None):
    cdef cnp.int8_t[:, :] p = np.ascontiguousarray(perms, dtype=np.int8)
    cdef const cnp.int64_t[:] cd = np.ascontiguousarray(codes, dtype=np.int64)
    cdef cnp.int64_t[:] xv = np.ascontiguousarray(xs, dtype=np.int64)
    cdef cnp.int64_t[:] ov = np.ascontiguousarray(os, dtype=np.int64)
    cdef int n = xv.shape[0]
    cdef Py_ssize_t stop_ = p.shape[0] if stop is None else stop
    cdef vector[cnp.int64_t] src
    cdef vector[cnp.int64_t] tgt
    cdef vector[cnp.int64_t] wts
    cdef cnp.int64_t powers[64]
    cdef int i, j, a, b, t, h, row, left, right, bot, top, height, width, wx, side, q
    cdef bint blocked
    cdef Py_ssize_t k, tk
    cdef cnp.int64_t code, ycode
    if n > 15:
        raise ValueError("state codes overflow beyond n = 15")
    powers[n - 1] = 1
    for i in range(n - 2, -1, -1):
        powers[i] = powers[i + 1] * n
    with nogil:
        for k in range(start, stop_):
            code = cd[k]
            for i in range(n):
                a = p[k, i]
                for j in range(i + 1, n):
                    b = p[k, j]
                    ycode = code + (b - a) * powers[i] + (a - b) * powers[j]
                    for side in range(2):
                        if side == 0:
                            left = i; right = j; bot = a; top = b
                        else:
                            left = j; right = i + n; bot = b; top = a
                        height = (top - bot + n) % n
                        width = right - left
                        blocked = False
                        for t in range(left + 1, right):
                            q = (p[k, t % n] - bot + n) % n
                            if q > 0 and q < height:
                                blocked = True
                                break
                        if blocked:
                            continue
                        wx = 0
                        for h in range(height):
                            row = (bot + h) % n
                            if (ov[row] - left + n) % n < width:
                                blocked = True
                                break
                            if (xv[row] - left + n) % n < width:
                                wx += 1
                        if blocked or (wx > 0 and not allow_x):
                            continue
                        tk = _find(cd, ycode)
                        if tk < 0:
                            continue
                        src.push_back(k)
                        tgt.push_back(tk)
                        wts.push_back(wx)
    m = src.size()
    s_arr = np.empty(m, dtype=np.int64)
    t_arr = np.empty(m, dtype=np.int64)
    w_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] sv = s_arr
    cdef cnp.int64_t[:] tv = t_arr
    cdef cnp.int64_t[:] wv = w_arr
    for k in range(<Py_ssize_t>m):
        sv[k] = src[k]
        tv[k] = tgt[k]
        wv[k] = wts[k]
    return s_arr, t_arr, w_arr

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernels on bit-packed uint64 rows.

Bit-for-bit identical semantics to ``_pure``; only the heavy loops are
implemented in C.  Packing helpers are shared with the pure backend.
"""

import numpy as np

cimport cython
from libc.stdint cimport uint8_t, uint64_t, int64_t

cdef extern from *:
    """
    static inline int csurf_popcountll(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    int csurf_popcountll(unsigned long long x) nogil


def row_reduce(a, int ncols):
    """In-place RREF over GF(2); returns pivot column list."""
    cdef uint64_t[:, ::1] m = a
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t words = m.shape[1]
    cdef Py_ssize_t r = 0, c, p, i, w2
    cdef int w
    cdef int b
    cdef uint64_t bit, tmp
    pivots = []
    for c in range(ncols):
        if r >= rows:
            break
        w = <int>(c >> 6)
        b = <int>(c & 63)
        bit = (<uint64_t>1) << b
        p = -1
        for i in range(r, rows):
            if m[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for w2 in range(words):
                tmp = m[r, w2]
                m[r, w2] = m[p, w2]
                m[p, w2] = tmp
        for i in range(rows):
            if i != r and (m[i, w] & bit):
                for w2 in range(words):
                    m[i, w2] ^= m[r, w2]
        pivots.append(c)
        r += 1
    return pivots


def mat_vec_parity(a, v):
    cdef uint64_t[:, ::1] m = a
    cdef uint64_t[::1] vec = v
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t words = m.shape[1]
    out = np.empty(rows, dtype=np.uint8)
    cdef uint8_t[::1] o = out
    cdef Py_ssize_t i, w
    cdef int acc
    with nogil:
        for i in range(rows):
            acc = 0
            for w in range(words):
                acc ^= csurf_popcountll(m[i, w] & vec[w])
            o[i] = <uint8_t>(acc & 1)
    return out


def matmul(a, int n_inner, b):
    cdef uint64_t[:, ::1] am = a
    cdef uint64_t[:, ::1] bm = b
    cdef Py_ssize_t m = am.shape[0]
    cdef Py_ssize_t wout = bm.shape[1]
    out = np.zeros((m, wout), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef Py_ssize_t i, j, w
    with nogil:
        for i in range(m):
            for j in range(n_inner):
                if am[i, j >> 6] & ((<uint64_t>1) << (j & 63)):
                    for w in range(wout):
                        o[i, w] ^= bm[j, w]
    return out


def xor_select(rows, idx):
    cdef uint64_t[:, ::1] m = rows
    idx_arr = np.ascontiguousarray(idx, dtype=np.intp)
    cdef Py_ssize_t[::1] ix = idx_arr
    cdef Py_ssize_t words = m.shape[1]
    out = np.zeros(words, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t i, w
    with nogil:
        for i in range(ix.shape[0]):
            for w in range(words):
                o[w] ^= m[ix[i], w]
    return out


def popcounts(a):
    cdef uint64_t[:, ::1] m = a
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t words = m.shape[1]
    out = np.empty(rows, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef Py_ssize_t i, w
    cdef int64_t acc
    with nogil:
        for i in range(rows):
            acc = 0
            for w in range(words):
                acc += csurf_popcountll(m[i, w])
            o[i] = acc
    return out


def coset_min_weight(table, v, int n):
    """(index, weight) minimizing popcount of x|z halves of table[i] ^ v."""
    cdef uint64_t[::1] t = table
    cdef uint64_t vv = <uint64_t>v
    cdef uint64_t mask = ((<uint64_t>1) << n) - 1
    cdef Py_ssize_t size = t.shape[0]
    cdef Py_ssize_t i, best = 0
    cdef int w, best_w = 255
    cdef uint64_t c
    with nogil:
        for i in range(size):
            c = t[i] ^ vv
            w = csurf_popcountll((c | (c >> n)) & mask)
            if w < best_w:
                best_w = w
                best = i
    return best, best_w


def coset_min_weight_many(table, vs, int n, int stop_at=0):
    """coset_min_weight for a batch of single-word vectors.

    Scanning a row stops early once a weight <= stop_at representative is
    found (the result is then exact anyway, since weights are minimized).
    """
    cdef uint64_t[::1] t = table
    vs_arr = np.ascontiguousarray(vs, dtype=np.uint64)
    cdef uint64_t[::1] v = vs_arr
    cdef Py_ssize_t nv = v.shape[0]
    cdef Py_ssize_t size = t.shape[0]
    idx_out = np.empty(nv, dtype=np.int64)
    w_out = np.empty(nv, dtype=np.int64)
    cdef int64_t[::1] io = idx_out
    cdef int64_t[::1] wo = w_out
    cdef uint64_t mask = ((<uint64_t>1) << n) - 1
    cdef Py_ssize_t i, j, best
    cdef int w, best_w
    cdef uint64_t c, vv
    with nogil:
        for j in range(nv):
            vv = v[j]
            best = 0
            best_w = 255
            for i in range(size):
                c = t[i] ^ vv
                w = csurf_popcountll((c | (c >> n)) & mask)
                if w < best_w:
                    best_w = w
                    best = i
                    if best_w <= stop_at:
                        break
            io[j] = best
            wo[j] = best_w
    return idx_out, w_out

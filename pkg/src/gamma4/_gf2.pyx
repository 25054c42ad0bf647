# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled packed GF(2) kernels; same contracts as ``_gf2_py``."""

import numpy as np

from libc.stdint cimport int64_t, uint64_t

BACKEND = "cython"


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


def set_bits(const uint64_t[::1] vec):
    cdef Py_ssize_t w, nw = vec.shape[0], k = 0
    cdef uint64_t x
    cdef Py_ssize_t total = 0
    for w in range(nw):
        total += __builtin_popcountll(vec[w])
    out = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] o = out
    for w in range(nw):
        x = vec[w]
        while x:
            o[k] = w * 64 + _ctz(x)
            k += 1
            x &= x - 1
    return out


def lowest_bit(const uint64_t[::1] vec):
    cdef Py_ssize_t w
    for w in range(vec.shape[0]):
        if vec[w]:
            return w * 64 + _ctz(vec[w])
    return -1


def popcount(const uint64_t[::1] vec):
    cdef Py_ssize_t w
    cdef long total = 0
    for w in range(vec.shape[0]):
        total += __builtin_popcountll(vec[w])
    return total


def xor_gather(const uint64_t[:, ::1] table, const int64_t[::1] idx, uint64_t[::1] out):
    cdef Py_ssize_t s, w, nw = out.shape[0]
    cdef int64_t r
    with nogil:
        for s in range(idx.shape[0]):
            r = idx[s]
            for w in range(nw):
                out[w] ^= table[r, w]


def reduce_inplace(uint64_t[::1] vec, const uint64_t[:, ::1] rows, const int64_t[::1] row_of_col,
                   const uint64_t[::1] pivmask):
    cdef Py_ssize_t w, v, nw = vec.shape[0]
    cdef uint64_t x
    cdef int64_t r
    with nogil:
        for w in range(nw):
            # pivot bits of vec only ever get cleared by these XORs
            x = vec[w] & pivmask[w]
            while x:
                r = row_of_col[w * 64 + _ctz(x)]
                for v in range(w, nw):
                    vec[v] ^= rows[r, v]
                x &= x - 1


def eliminate_column(uint64_t[:, ::1] rows, Py_ssize_t nrows, Py_ssize_t col, const uint64_t[::1] newrow):
    cdef Py_ssize_t r, v, nw = rows.shape[1]
    cdef Py_ssize_t w = col >> 6
    cdef uint64_t bit = (<uint64_t>1) << (col & 63)
    with nogil:
        for r in range(nrows):
            if rows[r, w] & bit:
                for v in range(nw):
                    rows[r, v] ^= newrow[v]


def clear_column(uint64_t[:, ::1] rows, Py_ssize_t nrows, Py_ssize_t col):
    cdef Py_ssize_t r, w = col >> 6
    cdef uint64_t mask = ~((<uint64_t>1) << (col & 63))
    with nogil:
        for r in range(nrows):
            rows[r, w] &= mask


def rank_inplace(uint64_t[:, ::1] mat, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = mat.shape[0], nw = mat.shape[1]
    cdef Py_ssize_t r = 0, col, w, i, piv, v
    cdef uint64_t bit, tmp
    with nogil:
        for col in range(ncols):
            if r == nrows:
                break
            w = col >> 6
            bit = (<uint64_t>1) << (col & 63)
            piv = -1
            for i in range(r, nrows):
                if mat[i, w] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for v in range(nw):
                    tmp = mat[r, v]
                    mat[r, v] = mat[piv, v]
                    mat[piv, v] = tmp
            for i in range(r + 1, nrows):
                if mat[i, w] & bit:
                    for v in range(w, nw):
                        mat[i, v] ^= mat[r, v]
            r += 1
    return r

# cython: language_level=3
"""Compiled panel elimination kernel; contract matches `pure.panel_jordan`."""

import numpy as np

cimport cython
from libc.stdint cimport int64_t


cdef inline int64_t powmod(int64_t base, int64_t exp, int64_t p) nogil:
    cdef int64_t acc = 1
    base %= p
    while exp > 0:
        if exp & 1:
            acc = acc * base % p
        base = base * base % p
        exp >>= 1
    return acc


@cython.boundscheck(False)
@cython.wraparound(False)
def panel_jordan(int64_t[:, ::1] E, long p):
    """In-place Gauss-Jordan on an int64 panel modulo p.

    Pivot selection matches the numpy backend exactly: first unpivoted row
    with a nonzero entry, scanning columns left to right. Entries must lie
    in [0, p) with p < 2^31 so products fit in int64.
    """
    cdef Py_ssize_t m = E.shape[0]
    cdef Py_ssize_t k = E.shape[1]
    cdef Py_ssize_t c, i, j, s
    cdef int64_t inv, f, piv
    rows = []
    cols = []
    if m == 0 or k == 0:
        return rows, cols
    used_arr = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] used = used_arr
    for c in range(k):
        s = -1
        for i in range(m):
            if used[i] == 0 and E[i, c] != 0:
                s = i
                break
        if s < 0:
            continue
        piv = E[s, c]
        if piv != 1:
            inv = powmod(piv, p - 2, p)
            with nogil:
                for j in range(c, k):
                    E[s, j] = E[s, j] * inv % p
        with nogil:
            for i in range(m):
                if i == s:
                    continue
                f = E[i, c]
                if f == 0:
                    continue
                f = p - f
                for j in range(c, k):
                    E[i, j] = (E[i, j] + f * E[s, j]) % p
        used[s] = 1
        rows.append(s)
        cols.append(c)
    return rows, cols

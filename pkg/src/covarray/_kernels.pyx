# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Signatures mirror ``_pykernels`` exactly."""

import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint32_t


cdef Py_ssize_t _ipow(Py_ssize_t base, Py_ssize_t e):
    cdef Py_ssize_t r = 1
    while e > 0:
        r *= base
        e -= 1
    return r


def witness_counts(const uint8_t[:, ::1] mat, const Py_ssize_t[:, ::1] combos, int alpha):
    cdef Py_ssize_t ncomb = combos.shape[0]
    cdef Py_ssize_t t = combos.shape[1]
    cdef Py_ssize_t n = mat.shape[1]
    cdef Py_ssize_t c, j, col, code
    counts = np.zeros((ncomb, _ipow(alpha, t)), dtype=np.uint32)
    cdef uint32_t[:, ::1] out = counts
    with nogil:
        for c in range(ncomb):
            for col in range(n):
                code = 0
                for j in range(t):
                    code = code * alpha + mat[combos[c, j], col] - 1
                out[c, code] += 1
    return counts


def first_witness(const uint8_t[:, ::1] mat, const Py_ssize_t[:, ::1] combos, int alpha):
    cdef Py_ssize_t ncomb = combos.shape[0]
    cdef Py_ssize_t t = combos.shape[1]
    cdef Py_ssize_t n = mat.shape[1]
    cdef Py_ssize_t c, j, col, code
    first = np.full((ncomb, _ipow(alpha, t)), -1, dtype=np.int64)
    cdef int64_t[:, ::1] out = first
    with nogil:
        for c in range(ncomb):
            for col in range(n):
                code = 0
                for j in range(t):
                    code = code * alpha + mat[combos[c, j], col] - 1
                if out[c, code] < 0:
                    out[c, code] = col
    return first


def stack_hits(const uint8_t[:, :, ::1] stacks, const uint8_t[::1] target):
    cdef Py_ssize_t trials = stacks.shape[0]
    cdef Py_ssize_t t = stacks.shape[1]
    cdef Py_ssize_t w = stacks.shape[2]
    cdef Py_ssize_t s, j, col
    cdef bint ok
    hits = np.zeros(trials, dtype=np.bool_)
    cdef uint8_t[::1] out = hits.view(np.uint8)
    with nogil:
        for s in range(trials):
            for col in range(w):
                ok = True
                for j in range(t):
                    if stacks[s, j, col] != target[j]:
                        ok = False
                        break
                if ok:
                    out[s] = 1
                    break
    return hits

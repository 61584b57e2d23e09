# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled backend for the simplex scan kernel.

Mirrors _scan_py exactly: same multiplication order per term, same
accumulation order over terms, so results are bitwise-identical to the
pure-Python backend.
"""

import numpy as np


def eval_probs(long long[:, ::1] counts, double[:, ::1] table,
               double[::1] coefs, long long[:, ::1] expts):
    cdef Py_ssize_t B = counts.shape[0]
    cdef Py_ssize_t k = counts.shape[1]
    cdef Py_ssize_t T = coefs.shape[0]
    out = np.zeros(B)
    cdef double[::1] o = out
    cdef Py_ssize_t b, t, j
    cdef double acc, term
    for b in range(B):
        acc = 0.0
        for t in range(T):
            term = coefs[t]
            for j in range(k):
                term = term * table[counts[b, j], expts[t, j]]
            acc = acc + term
        o[b] = acc
    return out

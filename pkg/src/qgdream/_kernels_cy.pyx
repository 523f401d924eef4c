# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels for graph-state construction.

Index tables are injected from edges.py at import time so the canonical
edge order lives in exactly one place.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

from .edges import MATCH_EDGE_1, MATCH_EDGE_2

BACKEND = "cython"

cdef Py_ssize_t[3][16] E1
cdef Py_ssize_t[3][16] E2

cdef _init_tables():
    cdef Py_ssize_t d, k
    for d in range(3):
        for k in range(16):
            E1[d][k] = MATCH_EDGE_1[d, k]
            E2[d][k] = MATCH_EDGE_2[d, k]

_init_tables()


def build_state_batch(weights):
    """Unnormalized amplitudes (n, 16) from edge weights (n, 24)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, 16))
    cdef Py_ssize_t i, d, k
    cdef double amp
    for i in range(n):
        for k in range(16):
            amp = 0.0
            for d in range(3):
                amp += w[i, E1[d][k]] * w[i, E2[d][k]]
            out[i, k] = amp
    return out


def pm_probability_batch(weights):
    """Squared matching weight products, shape (n, 3, 16)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=3] out = np.empty((n, 3, 16))
    cdef Py_ssize_t i, d, k
    cdef double prod
    for i in range(n):
        for d in range(3):
            for k in range(16):
                prod = w[i, E1[d][k]] * w[i, E2[d][k]]
                out[i, d, k] = prod * prod
    return out


def state_jacobian(weights):
    """d amplitude / d weight, shape (16, 24), for a single graph."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] jac = np.zeros((16, 24))
    cdef Py_ssize_t d, k
    for k in range(16):
        for d in range(3):
            jac[k, E1[d][k]] += w[E2[d][k]]
            jac[k, E2[d][k]] += w[E1[d][k]]
    return jac

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops over CSR row data.

Every reduction runs in strict sequential IEEE order (and the extension is
built with -ffp-contract=off), so results are bit-identical to the pure
Python mirror in `_pykernels`. Keep the two files in lockstep.
"""

from libc.math cimport sqrt

import numpy as np


def backend_name():
    return "compiled"


def cosine_matrix(long[::1] indptr, long[::1] indices, double[::1] data, Py_ssize_t n_rows):
    """All-pairs cosine of CSR rows -> dense symmetric (n_rows, n_rows).

    Zero rows score 0 against everything, including themselves; non-zero
    diagonals are exactly 1. Off-diagonal values are clamped to <= 1.
    """
    out = np.zeros((n_rows, n_rows), dtype=np.float64)
    cdef double[:, ::1] om = out
    norms_arr = np.zeros(n_rows, dtype=np.float64)
    cdef double[::1] norms = norms_arr
    cdef Py_ssize_t i, j
    cdef long a, b, ea, eb
    cdef double acc, c
    for i in range(n_rows):
        acc = 0.0
        for a in range(indptr[i], indptr[i + 1]):
            acc = acc + data[a] * data[a]
        norms[i] = sqrt(acc)
    for i in range(n_rows):
        if norms[i] == 0.0:
            continue
        om[i, i] = 1.0
        for j in range(i + 1, n_rows):
            if norms[j] == 0.0:
                continue
            acc = 0.0
            a = indptr[i]
            b = indptr[j]
            ea = indptr[i + 1]
            eb = indptr[j + 1]
            while a < ea and b < eb:
                if indices[a] == indices[b]:
                    acc = acc + data[a] * data[b]
                    a += 1
                    b += 1
                elif indices[a] < indices[b]:
                    a += 1
                else:
                    b += 1
            c = acc / (norms[i] * norms[j])
            if c > 1.0:
                c = 1.0
            om[i, j] = c
            om[j, i] = c
    return out


def csr_matvec(long[::1] indptr, long[::1] indices, double[::1] data, Py_ssize_t n_rows, double[::1] v):
    """y = A @ v with sequential per-row accumulation."""
    out = np.zeros(n_rows, dtype=np.float64)
    cdef double[::1] y = out
    cdef Py_ssize_t i
    cdef long a
    cdef double acc
    for i in range(n_rows):
        acc = 0.0
        for a in range(indptr[i], indptr[i + 1]):
            acc = acc + data[a] * v[indices[a]]
        y[i] = acc
    return out


def csr_rmatvec(long[::1] indptr, long[::1] indices, double[::1] data, Py_ssize_t n_rows, Py_ssize_t n_cols, double[::1] u):
    """y = A.T @ u, scattering row-major so accumulation order is fixed."""
    out = np.zeros(n_cols, dtype=np.float64)
    cdef double[::1] y = out
    cdef Py_ssize_t i
    cdef long a
    cdef double ui
    for i in range(n_rows):
        ui = u[i]
        if ui == 0.0:
            continue
        for a in range(indptr[i], indptr[i + 1]):
            y[indices[a]] = y[indices[a]] + data[a] * ui
    return out

"""Pure-Python mirror of `_ckernels`.

Same loops, same operation order; Python floats are IEEE doubles, so the
two backends produce bit-identical results. Keep in lockstep with the .pyx.
"""

import math

import numpy as np


def backend_name():
    return "pure-python"


def cosine_matrix(indptr, indices, data, n_rows):
    indptr = list(indptr)
    indices = list(indices)
    data = list(data)
    out = np.zeros((n_rows, n_rows), dtype=np.float64)
    norms = [0.0] * n_rows
    for i in range(n_rows):
        acc = 0.0
        for a in range(indptr[i], indptr[i + 1]):
            acc = acc + data[a] * data[a]
        norms[i] = math.sqrt(acc)
    for i in range(n_rows):
        if norms[i] == 0.0:
            continue
        out[i, i] = 1.0
        for j in range(i + 1, n_rows):
            if norms[j] == 0.0:
                continue
            acc = 0.0
            a, b = indptr[i], indptr[j]
            ea, eb = indptr[i + 1], indptr[j + 1]
            while a < ea and b < eb:
                ia, ib = indices[a], indices[b]
                if ia == ib:
                    acc = acc + data[a] * data[b]
                    a += 1
                    b += 1
                elif ia < ib:
                    a += 1
                else:
                    b += 1
            c = acc / (norms[i] * norms[j])
            if c > 1.0:
                c = 1.0
            out[i, j] = c
            out[j, i] = c
    return out


def csr_matvec(indptr, indices, data, n_rows, v):
    indptr = list(indptr)
    indices = list(indices)
    data = list(data)
    v = list(v)
    out = np.zeros(n_rows, dtype=np.float64)
    for i in range(n_rows):
        acc = 0.0
        for a in range(indptr[i], indptr[i + 1]):
            acc = acc + data[a] * v[indices[a]]
        out[i] = acc
    return out


def csr_rmatvec(indptr, indices, data, n_rows, n_cols, u):
    indptr = list(indptr)
    indices = list(indices)
    data = list(data)
    u = list(u)
    y = [0.0] * n_cols
    for i in range(n_rows):
        ui = u[i]
        if ui == 0.0:
            continue
        for a in range(indptr[i], indptr[i + 1]):
            j = indices[a]
            y[j] = y[j] + data[a] * ui
    return np.asarray(y, dtype=np.float64)

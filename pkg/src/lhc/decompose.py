"""Rank-k truncated singular decomposition by orthogonal power iteration.

An orthonormal block is repeatedly multiplied by the Gram operator A^T A
(via the CSR matvec kernels) and re-orthonormalized; singular values and
right vectors come from a Rayleigh-Ritz extraction on the block, with
trailing components deflated against the leading ones by the
orthonormalization. The block carries two extra columns so near-degenerate
values at the requested rank stay resolvable. Iteration stops when
successive singular-value estimates change by less than 1e-10, capped at
1000 sweeps. Everything is deterministic: the start block is fixed, no
randomness anywhere.
"""

import math
from typing import Tuple

import numpy as np

from ._kernels import csr_matvec, csr_rmatvec
from .errors import RankTooLarge
from .tensor import MatrixView

TOLERANCE = 1e-10
MAX_SWEEPS = 1000
_OVERSAMPLE = 2


def decompose(view: MatrixView, k: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(row_factors, col_factors, spectrum) with spectrum non-increasing.

    row_factors is (n_rows, k), col_factors is (n_cols, k); the rank-k
    reconstruction is row_factors @ diag(spectrum) @ col_factors.T.
    """
    n_rows, n_cols = view.shape
    max_rank = min(n_rows, n_cols)
    if k < 1 or k > max_rank:
        raise RankTooLarge(k, max_rank)
    indptr, indices, data = view.to_csr()

    def apply_a(v):
        return csr_matvec(indptr, indices, data, n_rows, np.ascontiguousarray(v))

    def apply_at(u):
        return csr_rmatvec(indptr, indices, data, n_rows, n_cols, np.ascontiguousarray(u))

    p = min(k + _OVERSAMPLE, max_rank)
    q = _start_block(n_cols, p)
    sigma_prev = np.full(p, np.inf)
    z = None
    for _ in range(MAX_SWEEPS):
        z = np.column_stack([apply_a(q[:, j]) for j in range(p)])
        small = z.T @ z
        eigvals = np.linalg.eigvalsh(small)[::-1]
        sigma_est = np.sqrt(np.clip(eigvals, 0.0, None))
        if np.all(np.abs(sigma_est - sigma_prev) < TOLERANCE):
            break
        sigma_prev = sigma_est
        w = np.column_stack([apply_at(z[:, j]) for j in range(p)])
        q = _orthonormalize(w, n_cols, p)
    z = np.column_stack([apply_a(q[:, j]) for j in range(p)])
    small = z.T @ z
    eigvals, eigvecs = np.linalg.eigh(small)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    spectrum = np.sqrt(np.clip(eigvals[:k], 0.0, None))
    col_factors = q @ eigvecs[:, :k]
    row_factors = np.zeros((n_rows, k))
    for j in range(k):
        if spectrum[j] > 0.0:
            row_factors[:, j] = apply_a(col_factors[:, j]) / spectrum[j]
    return row_factors, col_factors, spectrum


def reconstruction_error(view: MatrixView, row_factors, col_factors, spectrum) -> float:
    """Frobenius distance between the view and its rank-k reconstruction."""
    dense = np.zeros(view.shape)
    for (i, j), v in view.cells.items():
        dense[i, j] = v
    approx = row_factors @ np.diag(spectrum) @ col_factors.T
    return float(np.linalg.norm(dense - approx))


def latent_similarity(row_factors, spectrum, i: int, j: int) -> float:
    """Cosine of two rows in the spectrum-scaled latent space."""
    a = row_factors[i] * spectrum
    b = row_factors[j] * spectrum
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def _start_block(n: int, p: int) -> np.ndarray:
    """Fixed, generic start block (no randomness in the pipeline)."""
    m = np.empty((n, p))
    for i in range(n):
        for j in range(p):
            m[i, j] = math.cos(float((i + 1) * (j + 1)))
    return _orthonormalize(m, n, p)


def _orthonormalize(m: np.ndarray, n: int, p: int) -> np.ndarray:
    q, r = np.linalg.qr(m)
    # rank-deficient blocks get deterministic basis completions
    for j in range(q.shape[1]):
        if abs(r[j, j]) < 1e-300:
            q[:, j] = 0.0
            q[j % n, j] = 1.0
    if q.shape[1] < p:
        pad = np.zeros((n, p - q.shape[1]))
        q = np.column_stack([q, pad])
    return q

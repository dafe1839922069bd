"""Backend parity: the compiled extension and the pure-Python fallback must
agree bit for bit, so either can serve any store."""

import numpy as np
import pytest

from lhc._kernels import _pykernels
from lhc._kernels import backend_name

try:
    from lhc._kernels import _ckernels
except ImportError:
    _ckernels = None

needs_compiled = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def random_csr(rng, n_rows, n_cols, density=0.4):
    indptr = [0]
    indices = []
    data = []
    for _ in range(n_rows):
        cols = sorted(int(c) for c in np.nonzero(rng.random(n_cols) < density)[0])
        indices.extend(cols)
        data.extend(float(rng.random()) for _ in cols)
        indptr.append(len(indices))
    return (
        np.asarray(indptr, dtype=np.int64),
        np.asarray(indices, dtype=np.int64),
        np.asarray(data, dtype=np.float64),
    )


def test_backend_selected():
    assert backend_name() in ("compiled", "pure-python")


@needs_compiled
def test_cosine_matrix_bit_identical():
    rng = np.random.default_rng(91)
    for _ in range(10):
        n_rows = int(rng.integers(1, 20))
        n_cols = int(rng.integers(1, 30))
        indptr, indices, data = random_csr(rng, n_rows, n_cols)
        compiled = _ckernels.cosine_matrix(indptr, indices, data, n_rows)
        pure = _pykernels.cosine_matrix(indptr, indices, data, n_rows)
        assert (compiled == pure).all()


@needs_compiled
def test_matvec_bit_identical():
    rng = np.random.default_rng(92)
    for _ in range(10):
        n_rows = int(rng.integers(1, 25))
        n_cols = int(rng.integers(1, 25))
        indptr, indices, data = random_csr(rng, n_rows, n_cols)
        v = rng.standard_normal(n_cols)
        u = rng.standard_normal(n_rows)
        assert (
            _ckernels.csr_matvec(indptr, indices, data, n_rows, v)
            == _pykernels.csr_matvec(indptr, indices, data, n_rows, v)
        ).all()
        assert (
            _ckernels.csr_rmatvec(indptr, indices, data, n_rows, n_cols, u)
            == _pykernels.csr_rmatvec(indptr, indices, data, n_rows, n_cols, u)
        ).all()


@needs_compiled
def test_zero_rows_and_empty_matrix():
    indptr = np.asarray([0, 0, 0], dtype=np.int64)
    indices = np.asarray([], dtype=np.int64)
    data = np.asarray([], dtype=np.float64)
    compiled = _ckernels.cosine_matrix(indptr, indices, data, 2)
    pure = _pykernels.cosine_matrix(indptr, indices, data, 2)
    assert (compiled == pure).all()
    assert (compiled == 0.0).all()  # zero rows score 0, even on the diagonal

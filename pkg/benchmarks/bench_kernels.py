"""Compare the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 64,128,256]

Prints a timing table for the all-pairs cosine kernel and the Gram-operator
matvec pair that drives the truncated decomposition, and asserts that both
backends return bit-identical results on every instance.
"""

import argparse
import sys
import time

import numpy as np

from lhc._kernels import _pykernels

try:
    from lhc._kernels import _ckernels
except ImportError:
    _ckernels = None


def random_csr(rng, n_rows, n_cols, density=0.1):
    indptr = [0]
    indices = []
    data = []
    for _ in range(n_rows):
        cols = np.nonzero(rng.random(n_cols) < density)[0]
        indices.extend(int(c) for c in cols)
        data.extend(float(x) for x in rng.random(len(cols)))
        indptr.append(len(indices))
    return (
        np.asarray(indptr, dtype=np.int64),
        np.asarray(indices, dtype=np.int64),
        np.asarray(data, dtype=np.float64),
    )


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="64,128,256", help="comma-separated row counts")
    parser.add_argument("--cols", type=int, default=400)
    parser.add_argument("--density", type=float, default=0.1)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    rng = np.random.default_rng(0)
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'kernel':<22}{'n':>6}{'compiled':>12}{'pure':>12}{'speedup':>9}  identical")
    for n in sizes:
        indptr, indices, data = random_csr(rng, n, args.cols, args.density)
        t_c, r_c = timed(_ckernels.cosine_matrix, indptr, indices, data, n)
        t_p, r_p = timed(_pykernels.cosine_matrix, indptr, indices, data, n, repeat=1)
        same = bool((r_c == r_p).all())
        print(f"{'cosine_matrix':<22}{n:>6}{t_c:>11.4f}s{t_p:>11.4f}s{t_p / t_c:>8.1f}x  {same}")
        assert same, "backends diverged"

        v = rng.standard_normal(args.cols)
        t_c, r_c = timed(_ckernels.csr_matvec, indptr, indices, data, n, v, repeat=20)
        t_p, r_p = timed(_pykernels.csr_matvec, indptr, indices, data, n, v, repeat=5)
        same = bool((r_c == r_p).all())
        print(f"{'csr_matvec':<22}{n:>6}{t_c:>11.4f}s{t_p:>11.4f}s{t_p / t_c:>8.1f}x  {same}")
        assert same, "backends diverged"

        u = rng.standard_normal(n)
        t_c, r_c = timed(_ckernels.csr_rmatvec, indptr, indices, data, n, args.cols, u, repeat=20)
        t_p, r_p = timed(_pykernels.csr_rmatvec, indptr, indices, data, n, args.cols, u, repeat=5)
        same = bool((r_c == r_p).all())
        print(f"{'csr_rmatvec':<22}{n:>6}{t_c:>11.4f}s{t_p:>11.4f}s{t_p / t_c:>8.1f}x  {same}")
        assert same, "backends diverged"
    return 0


if __name__ == "__main__":
    sys.exit(main())

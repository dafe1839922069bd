"""Row-vector similarity and average-link concept clustering.

Similarity is the cosine of two row vectors of a matrix view; rows are
non-negative so values live in [0, 1], and a zero row scores 0 against
everything (itself included). Clustering merges the pair of clusters with
the highest average pairwise similarity strictly above the threshold,
breaking ties toward the smallest member term ids; cluster-pair averages
are computed with math.fsum so the merge sequence does not depend on
summation order.
"""

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from ._kernels import cosine_matrix
from .errors import UnknownTerm
from .tensor import MatrixView


@dataclass(frozen=True)
class ConceptCluster:
    id: str
    members: FrozenSet[str]
    centroid: Dict[Tuple[str, str], float]

    @property
    def min_member(self) -> str:
        return min(self.members)


def similarity_matrix(view: MatrixView) -> np.ndarray:
    """All-pairs cosine over the view's rows (kernel-backed)."""
    indptr, indices, data = view.to_csr()
    return cosine_matrix(indptr, indices, data, len(view.row_ids))


def similarity(view: MatrixView, a: str, b: str) -> float:
    """Cosine of two row vectors; mirrors the kernel arithmetic exactly."""
    index = view.row_index()
    for tid in (a, b):
        if tid not in index:
            raise UnknownTerm(tid)
    row_a = view.row_items(index[a])
    row_b = view.row_items(index[b])
    norm_a = _norm(row_a)
    norm_b = _norm(row_b)
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    if a == b:
        return 1.0
    acc = 0.0
    ia = ib = 0
    while ia < len(row_a) and ib < len(row_b):
        ja, va = row_a[ia]
        jb, vb = row_b[ib]
        if ja == jb:
            acc = acc + va * vb
            ia += 1
            ib += 1
        elif ja < jb:
            ia += 1
        else:
            ib += 1
    c = acc / (norm_a * norm_b)
    return 1.0 if c > 1.0 else c


def _norm(items: Sequence[Tuple[int, float]]) -> float:
    acc = 0.0
    for _, v in items:
        acc = acc + v * v
    return math.sqrt(acc)


def agglomerate(sim: np.ndarray, theta: float) -> Tuple[List[List[int]], List[Tuple[int, int]]]:
    """Average-link agglomeration over a similarity matrix.

    Returns (clusters, merge trace); clusters are sorted index lists and the
    trace records (min index of absorbing cluster, min index of absorbed
    cluster) per merge, which is what the oracle tests compare.
    """
    n = sim.shape[0]
    clusters: List[List[int]] = [[i] for i in range(n)]
    trace: List[Tuple[int, int]] = []
    while len(clusters) > 1:
        best = None
        best_pair = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                a, b = clusters[i], clusters[j]
                if a[0] > b[0]:
                    a, b = b, a
                avg = math.fsum(sim[x][y] for x in a for y in b) / (len(a) * len(b))
                key = (-avg, a[0], b[0])
                if best is None or key < best:
                    best = key
                    best_pair = (i, j)
        if best is None or -best[0] <= theta:
            break
        i, j = best_pair
        merged = sorted(clusters[i] + clusters[j])
        lo, hi = clusters[i], clusters[j]
        if lo[0] > hi[0]:
            lo, hi = hi, lo
        trace.append((lo[0], hi[0]))
        clusters = [c for k, c in enumerate(clusters) if k not in (i, j)]
        clusters.append(merged)
    clusters.sort(key=lambda c: c[0])
    return clusters, trace


def cluster_terms(view: MatrixView, theta_sim: float = 0.5) -> List[ConceptCluster]:
    """Partition the view's row terms into concept clusters."""
    if not (0.0 < theta_sim <= 1.0):
        raise ValueError(f"theta_sim must be in (0, 1], got {theta_sim}")
    if not view.row_ids:
        return []
    sim = similarity_matrix(view)
    groups, _ = agglomerate(sim, theta_sim)
    clusters = []
    for group in groups:
        members = frozenset(view.row_ids[i] for i in group)
        centroid = _centroid(view, sorted(group))
        clusters.append(ConceptCluster("cluster:" + min(members), members, centroid))
    clusters.sort(key=lambda c: c.min_member)
    return clusters


def _centroid(view: MatrixView, rows: List[int]) -> Dict[Tuple[str, str], float]:
    sums: Dict[int, List[float]] = {}
    for i in rows:
        for j, v in view.row_items(i):
            sums.setdefault(j, []).append(v)
    return {
        view.col_keys[j]: math.fsum(values) / len(rows) for j, values in sorted(sums.items())
    }

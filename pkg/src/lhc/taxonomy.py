"""Taxonomy induction over concept clusters via distributional inclusion.

inclusion(A -> B) is the share of A's centroid mass covered feature-wise
by B; an edge A -> B (A is the child) needs inclusion >= tau and strict
asymmetry over the reverse direction, so mutual inclusion yields no edge.
The surviving edge set is cycle-checked and transitively reduced.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple

from .analysis import ConceptCluster


@dataclass(frozen=True)
class TaxonomyEdge:
    child: str  # cluster id
    parent: str
    inclusion: float


def inclusion(child_centroid: Dict, parent_centroid: Dict) -> float:
    """Weighted distributional inclusion of the child in the parent."""
    features = sorted(child_centroid)
    mass = math.fsum(child_centroid[f] for f in features)
    if mass == 0.0:
        return 0.0
    covered = math.fsum(min(child_centroid[f], parent_centroid.get(f, 0.0)) for f in features)
    return covered / mass


def induce_taxonomy(clusters: Sequence[ConceptCluster], tau_tax: float = 0.75) -> List[TaxonomyEdge]:
    """Edges child -> parent between clusters, acyclic and transitively reduced."""
    if not (0.0 < tau_tax <= 1.0):
        raise ValueError(f"tau_tax must be in (0, 1], got {tau_tax}")
    ordered = sorted(clusters, key=lambda c: c.id)
    edges: List[TaxonomyEdge] = []
    for a in ordered:
        for b in ordered:
            if a.id == b.id:
                continue
            fwd = inclusion(a.centroid, b.centroid)
            if fwd < tau_tax:
                continue
            rev = inclusion(b.centroid, a.centroid)
            if fwd > rev:
                edges.append(TaxonomyEdge(a.id, b.id, fwd))
    edges = _break_cycles(edges)
    return _transitive_reduction(edges)


def _adjacency(edges: Sequence[TaxonomyEdge]) -> Dict[str, Set[str]]:
    adj: Dict[str, Set[str]] = {}
    for e in edges:
        adj.setdefault(e.child, set()).add(e.parent)
    return adj


def _reaches(adj: Dict[str, Set[str]], start: str, goal: str) -> bool:
    stack = [start]
    seen = {start}
    while stack:
        node = stack.pop()
        if node == goal:
            return True
        for nxt in adj.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def _break_cycles(edges: List[TaxonomyEdge]) -> List[TaxonomyEdge]:
    """Drop the weakest edge of any remaining cycle (strict asymmetry rules
    out 2-cycles; longer ones are possible in principle)."""
    kept = sorted(edges, key=lambda e: (-e.inclusion, e.child, e.parent))
    result: List[TaxonomyEdge] = []
    adj: Dict[str, Set[str]] = {}
    for e in kept:
        if _reaches(adj, e.parent, e.child):
            continue  # would close a cycle; weaker edge loses
        result.append(e)
        adj.setdefault(e.child, set()).add(e.parent)
    result.sort(key=lambda e: (e.child, e.parent))
    return result


def _transitive_reduction(edges: List[TaxonomyEdge]) -> List[TaxonomyEdge]:
    adj = _adjacency(edges)
    reduced = []
    for e in edges:
        # redundant iff the parent is reachable through some other parent
        indirect = any(
            mid != e.parent and _reaches(adj, mid, e.parent) for mid in adj.get(e.child, ())
        )
        if not indirect:
            reduced.append(e)
    reduced.sort(key=lambda e: (e.child, e.parent))
    return reduced

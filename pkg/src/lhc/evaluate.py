"""Generalized precision/recall against a gold statement set.

A system statement matches a gold statement when the predicates are equal
and both endpoint pairs are identical or similar at the threshold; exact
matches earn credit 1, soft matches earn min of the two endpoint
similarities. With theta_match = 1 and no perfect similarities this
degenerates to classical set precision/recall.
"""

from typing import Dict, Iterable, Tuple

from .errors import EmptySets

Triple = Tuple[str, str, str]


def evaluate_against_gold(
    system: Iterable[Triple],
    gold: Iterable[Triple],
    theta_match: float = 1.0,
    similarities: Dict[Tuple[str, str], float] = None,
) -> Tuple[float, float]:
    """(generalized precision, generalized recall).

    Inputs are (subject, predicate, object) triples; weights and provenance
    play no role and duplicates collapse (set semantics).
    """
    if not (0.0 < theta_match <= 1.0):
        raise ValueError(f"theta_match must be in (0, 1], got {theta_match}")
    system_set = {tuple(t) for t in system}
    gold_set = {tuple(t) for t in gold}
    if not system_set or not gold_set:
        raise EmptySets()
    sims = similarities or {}

    def endpoint_credit(a: str, b: str):
        if a == b:
            return 1.0
        sim = sims.get((a, b))
        if sim is None:
            sim = sims.get((b, a))
        if sim is not None and sim >= theta_match:
            return sim
        return None

    def best_credit(st: Triple, pool) -> float:
        best = 0.0
        for other in pool:
            if st[1] != other[1]:
                continue
            cs = endpoint_credit(st[0], other[0])
            co = endpoint_credit(st[2], other[2])
            if cs is None or co is None:
                continue
            best = max(best, min(cs, co))
            if best == 1.0:
                break
        return best

    precision = sum(best_credit(st, gold_set) for st in sorted(system_set)) / len(system_set)
    recall = sum(best_credit(st, system_set) for st in sorted(gold_set)) / len(gold_set)
    return precision, recall

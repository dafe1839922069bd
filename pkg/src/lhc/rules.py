"""Association-rule mining over binarized subject rows.

Transactions are the view's rows with a feature present wherever the cell
is positive; frequent itemsets come from a levelwise (apriori) search with
candidate join + subset pruning, and rules keep a single-feature
consequent. Support and confidence are plain transaction fractions, so
re-counting them directly must reproduce the reported values exactly.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Tuple

from .tensor import MatrixView

Feature = Tuple[str, str]  # (predicate id, other-argument id)


@dataclass(frozen=True)
class Rule:
    antecedent: Tuple[Feature, ...]  # sorted
    consequent: Feature
    support: float
    confidence: float


def binarize(view: MatrixView) -> List[FrozenSet[int]]:
    """One transaction per row: the set of column indices with weight > 0."""
    transactions = [set() for _ in range(len(view.row_ids))]
    for (i, j), v in view.cells.items():
        if v > 0:
            transactions[i].add(j)
    return [frozenset(t) for t in transactions]


def frequent_itemsets(transactions: List[FrozenSet[int]], minsup: float) -> Dict[FrozenSet[int], int]:
    """Levelwise frequent-itemset search; returns itemset -> support count."""
    n = len(transactions)
    if n == 0:
        return {}
    counts: Dict[FrozenSet[int], int] = {}
    singles: Dict[int, int] = {}
    for t in transactions:
        for f in t:
            singles[f] = singles.get(f, 0) + 1
    level = []
    for f, c in sorted(singles.items()):
        if c / n >= minsup:
            fs = frozenset([f])
            counts[fs] = c
            level.append((f,))
    k = 1
    while level:
        # join step: two k-itemsets sharing a (k-1)-prefix make a candidate
        candidates = []
        level_set = set(level)
        for a, b in combinations(level, 2):
            if a[:-1] == b[:-1]:
                cand = a + (b[-1],) if a[-1] < b[-1] else b + (a[-1],)
                # prune: all k-subsets must be frequent
                if all(tuple(sorted(set(cand) - {f})) in level_set for f in cand):
                    candidates.append(cand)
        candidates = sorted(set(candidates))
        next_level = []
        for cand in candidates:
            cand_set = frozenset(cand)
            count = sum(1 for t in transactions if cand_set <= t)
            if count / n >= minsup:
                counts[cand_set] = count
                next_level.append(cand)
        level = next_level
        k += 1
    return counts


def mine_rules(view: MatrixView, minsup: float = 0.2, minconf: float = 0.7) -> List[Rule]:
    """Rules with single-feature consequents from frequent itemsets."""
    if not (0.0 < minsup <= 1.0):
        raise ValueError(f"minsup must be in (0, 1], got {minsup}")
    if not (0.0 < minconf <= 1.0):
        raise ValueError(f"minconf must be in (0, 1], got {minconf}")
    transactions = binarize(view)
    n = len(transactions)
    if n == 0:
        return []
    counts = frequent_itemsets(transactions, minsup)
    rules = []
    for itemset, count in counts.items():
        if len(itemset) < 2:
            continue
        support = count / n
        for consequent in sorted(itemset):
            antecedent = itemset - {consequent}
            confidence = count / counts[antecedent]
            if confidence >= minconf:
                rules.append(
                    Rule(
                        antecedent=tuple(sorted(view.col_keys[j] for j in antecedent)),
                        consequent=view.col_keys[consequent],
                        support=support,
                        confidence=confidence,
                    )
                )
    rules.sort(key=lambda r: (-r.confidence, -r.support, r.antecedent, r.consequent))
    return rules

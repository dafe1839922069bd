"""Free-text search, graph neighborhood, and feedback propagation.

Search maps each whitespace token of the query onto terms (fuzzy, threshold
0.6), collects statements incident to any matched term (subject, predicate
or object position) and ranks them by statement weight times the best
mapping score among the statement's matched terms. Ties keep the store's
deterministic statement order.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

from .errors import NoMatch, UnknownTerm
from .mapping import map_identifier
from .store import Snapshot, Statement, Store

SEARCH_MAP_THRESHOLD = 0.6
FEEDBACK_ALPHA = 0.1


@dataclass(frozen=True)
class RankedResult:
    statement: Statement
    relevance: float
    match_terms: frozenset


def search(snapshot: Snapshot, query: str, limit: int = 10) -> List[RankedResult]:
    """Top `limit` statements ranked by weight x token-mapping score."""
    if not query or not query.strip():
        raise NoMatch(query)
    if limit < 1:
        raise ValueError("limit must be >= 1")
    term_scores = match_query_terms(snapshot, query)
    if not term_scores:
        raise NoMatch(query)
    ranked = []
    for st in snapshot.statements():
        matched = frozenset(t for t in st.triple if t in term_scores)
        if not matched:
            continue
        best = max(term_scores[t] for t in matched)
        ranked.append(RankedResult(st, st.weight * best, matched))
    ranked.sort(key=lambda r: (-r.relevance, r.statement.key))
    return ranked[:limit]


def match_query_terms(snapshot: Snapshot, query: str) -> Dict[str, float]:
    """Best mapping score per term over the query's whitespace tokens."""
    terms = list(snapshot.terms())
    scores: Dict[str, float] = {}
    for token in query.split():
        candidate = map_identifier(token, terms, SEARCH_MAP_THRESHOLD)
        if candidate is not None:
            prev = scores.get(candidate.target)
            if prev is None or candidate.score > prev:
                scores[candidate.target] = candidate.score
    return scores


def neighborhood(snapshot: Snapshot, term_id: str, radius: int = 1, limit: int = 50):
    """Breadth-first subgraph around a term; returns (term ids, statements).

    Statements connect their subject and object (undirected); the result
    keeps the `limit` highest-weight statements reachable within `radius`
    hops, derived similarTo edges included.
    """
    if radius not in (1, 2):
        raise ValueError("radius must be 1 or 2")
    if not snapshot.has_term(term_id):
        raise UnknownTerm(term_id)
    frontier = {term_id}
    visited = {term_id}
    collected: Dict[Tuple, Statement] = {}
    for _ in range(radius):
        next_frontier: Set[str] = set()
        for node in sorted(frontier):
            for st in snapshot.query(s=node) + snapshot.query(o=node):
                if st.key not in collected:
                    collected[st.key] = st
                other = st.object if st.subject == node else st.subject
                if other not in visited:
                    next_frontier.add(other)
                    visited.add(other)
        frontier = next_frontier
        if not frontier:
            break
    statements = sorted(collected.values(), key=lambda s: (-s.weight, s.key))[:limit]
    term_ids = {term_id}
    for st in statements:
        term_ids.add(st.subject)
        term_ids.add(st.object)
    return sorted(term_ids), statements


def apply_feedback(store: Store, key, direction: str, alpha: float = FEEDBACK_ALPHA, timestamp=None) -> float:
    """Thumbs-up/down on one statement; returns the new weight.

    up:   w' = w + alpha * (1 - w)
    down: w' = w * (1 - alpha)
    Both keep the weight strictly inside (0, 1]; the event is appended to
    the store's feedback log.
    """
    if direction not in ("up", "down"):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    st = store.statement(key)
    if direction == "up":
        new_weight = st.weight + alpha * (1.0 - st.weight)
        if new_weight == st.weight and st.weight < 1.0:
            # increment rounded away just below 1.0: step to the next float
            new_weight = math.nextafter(st.weight, 1.0)
    else:
        new_weight = st.weight * (1.0 - alpha)
    store.set_weight(key, new_weight)
    store.log_feedback(key, direction, timestamp)
    return new_weight


def derived_similarity_index(snapshot: Snapshot) -> Dict[Tuple[str, str], float]:
    """Symmetric lookup of materialized similarTo weights."""
    sims: Dict[Tuple[str, str], float] = {}
    for st in snapshot.statements():
        if st.provenance == "derived:similarity":
            sims[(st.subject, st.object)] = st.weight
            sims[(st.object, st.subject)] = st.weight
    return sims

"""Hypothesis plausibility scoring with fuzzy AND/OR semantics.

A hypothesis is a tree of relational atoms combined with AND/OR. Each atom
scores the best weight among statements matching its bound positions; when
an atom binds both subject and object but matches nothing directly, the
derived-similarity fallback substitutes similar terms for one endpoint at a
time and discounts by the similarity. AND combines children by product,
OR by max, so scores stay in [0, 1] and are monotone in the evidence.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .errors import MalformedHypothesis
from .search import RankedResult, derived_similarity_index
from .store import Snapshot

MAX_DEPTH = 8


@dataclass(frozen=True)
class Atom:
    subject: Optional[str] = None
    predicate: Optional[str] = None
    object: Optional[str] = None

    @property
    def bound_count(self):
        return sum(x is not None for x in (self.subject, self.predicate, self.object))


@dataclass(frozen=True)
class Combination:
    op: str  # "and" | "or"
    children: Tuple


Hypothesis = Union[Atom, Combination]


def parse_hypothesis(doc) -> Hypothesis:
    """Parse the JSON wire form: {"atom": {"s","p","o"}} or
    {"op": "and"|"or", "args": [...]}; "*"/null/missing mean wildcard."""
    node = _parse_node(doc, depth=1)
    return node


def _parse_node(doc, depth: int) -> Hypothesis:
    if depth > MAX_DEPTH:
        raise MalformedHypothesis(f"hypothesis deeper than {MAX_DEPTH}")
    if not isinstance(doc, dict):
        raise MalformedHypothesis(f"expected object, got {type(doc).__name__}")
    if "atom" in doc:
        fields = doc["atom"]
        if not isinstance(fields, dict):
            raise MalformedHypothesis("atom must be an object")
        atom = Atom(
            subject=_position(fields.get("s")),
            predicate=_position(fields.get("p")),
            object=_position(fields.get("o")),
        )
        if atom.bound_count < 2:
            raise MalformedHypothesis("atoms need at least 2 bound positions")
        return atom
    op = doc.get("op")
    if op not in ("and", "or"):
        raise MalformedHypothesis(f"unknown operator {op!r}")
    args = doc.get("args")
    if not isinstance(args, list) or len(args) < 2:
        raise MalformedHypothesis("and/or need at least 2 children")
    return Combination(op, tuple(_parse_node(a, depth + 1) for a in args))


def _position(value) -> Optional[str]:
    if value is None or value == "*" or value == "":
        return None
    if not isinstance(value, str):
        raise MalformedHypothesis(f"positions must be term id strings, got {value!r}")
    return value


def score_hypothesis(
    snapshot: Snapshot, hypothesis: Hypothesis, theta_sim: float = 0.5
) -> Tuple[float, List[RankedResult]]:
    """(plausibility in [0, 1], deduplicated argmax evidence per atom)."""
    sims = derived_similarity_index(snapshot)
    evidence: List[RankedResult] = []
    seen = set()

    def visit(node, depth):
        if depth > MAX_DEPTH:
            raise MalformedHypothesis(f"hypothesis deeper than {MAX_DEPTH}")
        if isinstance(node, Atom):
            score, best = _score_atom(snapshot, node, sims, theta_sim)
            if best is not None and best.statement.key not in seen:
                seen.add(best.statement.key)
                evidence.append(best)
            return score
        if isinstance(node, Combination):
            scores = [visit(child, depth + 1) for child in node.children]
            if len(scores) < 2:
                raise MalformedHypothesis("and/or need at least 2 children")
            if node.op == "and":
                out = 1.0
                for s in scores:
                    out *= s
                return out
            return max(scores)
        raise MalformedHypothesis(f"unknown node {node!r}")

    score = visit(hypothesis, 1)
    return score, evidence


def _score_atom(snapshot: Snapshot, atom: Atom, sims, theta_sim):
    if atom.bound_count < 2:
        raise MalformedHypothesis("atoms need at least 2 bound positions")
    direct = snapshot.query(s=atom.subject, p=atom.predicate, o=atom.object)
    if direct:
        best = sorted(direct, key=lambda st: (-st.weight, st.key))[0]
        matched = frozenset(x for x in (atom.subject, atom.predicate, atom.object) if x)
        return best.weight, RankedResult(best, best.weight, matched)
    if atom.subject is None or atom.object is None:
        return 0.0, None
    best_score = 0.0
    best_result = None
    # substitute one endpoint at a time with a derived-similar term
    for substitute_subject in (True, False):
        anchor = atom.subject if substitute_subject else atom.object
        for (x, y), sim in sorted(sims.items()):
            if x != anchor or sim < theta_sim:
                continue
            if substitute_subject:
                candidates = snapshot.query(s=y, p=atom.predicate, o=atom.object)
            else:
                candidates = snapshot.query(s=atom.subject, p=atom.predicate, o=y)
            for st in candidates:
                score = sim * st.weight
                if score > best_score:
                    best_score = score
                    matched = frozenset(v for v in (anchor, y) if v)
                    best_result = RankedResult(st, score, matched)
    return best_score, best_result

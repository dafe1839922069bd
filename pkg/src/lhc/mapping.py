"""Fuzzy identifier mapping: surface strings onto canonical terms.

Exact matches (after normalization) on a label or synonym score 1.0;
otherwise the score is the multiset Jaccard similarity of character
trigrams, kept only when it reaches the threshold. Ties break toward the
smaller term id so mapping is deterministic.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .normalize import normalize, trigram_jaccard
from .store import Term


@dataclass(frozen=True)
class MappingCandidate:
    surface: str
    target: str  # term id
    score: float


def map_identifier(surface: str, terms: Iterable[Term], threshold: float = 0.8) -> Optional[MappingCandidate]:
    """Best term for a surface string, or None below the threshold."""
    if not (0.0 < threshold <= 1.0):
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    norm_surface = normalize(surface)
    if not norm_surface:
        return None
    best: Optional[MappingCandidate] = None
    for term in sorted(terms, key=lambda t: t.id):
        for candidate_surface in term.surfaces():
            norm_target = normalize(candidate_surface)
            if not norm_target:
                continue
            if norm_surface == norm_target:
                return MappingCandidate(surface, term.id, 1.0)
            score = trigram_jaccard(norm_surface, norm_target)
            if score == 1.0:
                # trigram-anagram pathology: distinct strings with identical
                # trigram multisets must not claim exactness
                score = math.nextafter(1.0, 0.0)
            if score >= threshold and (best is None or score > best.score):
                best = MappingCandidate(surface, term.id, score)
    return best

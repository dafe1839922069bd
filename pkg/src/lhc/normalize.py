"""Surface-string normalization and character trigrams.

Shared by term interning (canonical identifiers) and fuzzy identifier
mapping, so "ABACAVIR ", "abacavir" and "Abacavir" all land on the same
canonical form.
"""

import re
import string
from collections import Counter

_PUNCT_TABLE = str.maketrans("", "", string.punctuation)
_WS_RE = re.compile(r"\s+")


def normalize(text: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace, trim."""
    lowered = text.lower().translate(_PUNCT_TABLE)
    return _WS_RE.sub(" ", lowered).strip()


def slug(text: str) -> str:
    """Normalized form with spaces replaced by underscores (identifier-safe)."""
    return normalize(text).replace(" ", "_")


def char_trigrams(text: str) -> Counter:
    """Multiset of character trigrams; strings shorter than 3 chars are a
    single gram so near-exact short surfaces still compare."""
    if len(text) >= 3:
        return Counter(text[i : i + 3] for i in range(len(text) - 2))
    if text:
        return Counter([text])
    return Counter()


def trigram_jaccard(a: str, b: str) -> float:
    """Multiset Jaccard similarity of the character-trigram profiles."""
    ta, tb = char_trigrams(a), char_trigrams(b)
    inter = sum((ta & tb).values())
    union = sum((ta | tb).values())
    return inter / union if union else 0.0

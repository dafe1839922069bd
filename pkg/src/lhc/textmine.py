"""Corpus mining: dictionary matching, sentence-window co-occurrence
counting, npmi association weights, and verb-lexicon relation labeling.

All passes are deterministic: documents are processed in the order given,
dictionary surfaces match longest-first, and outputs are sorted by term
id, so identical corpus + dictionary + window produce byte-identical
statements.
"""

import csv
import math
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, TextIO, Tuple

from . import vocab
from .errors import ParseError
from .store import SourceCategory, SourceId, Statement, Store, Term

_SENTENCE_RE = re.compile(r"(?<=[.!?])\s+")
_WORD_RE = re.compile(r"\w+")


@dataclass(frozen=True)
class CorpusDocument:
    doc_id: str
    text: str


@dataclass(frozen=True)
class CooccurrenceCount:
    term_a: str
    term_b: str
    joint: int
    count_a: int
    count_b: int
    total_windows: int


@dataclass(frozen=True)
class TermMatch:
    term_id: str
    start: int
    end: int


def split_sentences(text: str) -> List[str]:
    """Split on ., ! or ? followed by whitespace; drops empty pieces."""
    return [s for s in (piece.strip() for piece in _SENTENCE_RE.split(text)) if s]


class DictionaryMatcher:
    """Longest-match-first, case-insensitive, whole-word surface matcher.

    Surfaces (labels and synonyms) are tried longest first; a claimed span
    blocks shorter overlapping matches, so "APOBEC3G" wins over "APOBEC".
    Word boundaries are non-alphanumeric neighbors, which lets surfaces
    carry internal punctuation ("HLA-B*57:01").
    """

    def __init__(self, terms: Iterable[Term]):
        surfaces = {}
        for term in terms:
            for surface in term.surfaces():
                key = surface.lower().strip()
                if len(key) < 2:
                    continue
                surfaces.setdefault(key, term.id)
        # longest first; then lexicographic surface and id for determinism
        self._surfaces = sorted(surfaces.items(), key=lambda kv: (-len(kv[0]), kv[0], kv[1]))

    def match(self, sentence: str) -> List[TermMatch]:
        text = sentence.lower()
        claimed = [False] * len(text)
        found: List[TermMatch] = []
        for surface, term_id in self._surfaces:
            start = text.find(surface)
            while start != -1:
                end = start + len(surface)
                before_ok = start == 0 or not _is_word_char(text[start - 1])
                after_ok = end == len(text) or not _is_word_char(text[end])
                if before_ok and after_ok and not any(claimed[start:end]):
                    for i in range(start, end):
                        claimed[i] = True
                    found.append(TermMatch(term_id, start, end))
                start = text.find(surface, start + 1)
        found.sort(key=lambda m: m.start)
        return found


def _is_word_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def extract_cooccurrences(
    docs: Iterable[CorpusDocument], matcher: DictionaryMatcher, window: int = 1
) -> List[CooccurrenceCount]:
    """Corpus-global co-occurrence counts over sliding sentence windows.

    A window is `window` consecutive sentences; documents shorter than the
    window contribute one window spanning the whole document. Counts are
    window counts: count_a = windows containing a, joint = windows
    containing both.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    singles: Dict[str, int] = {}
    joints: Dict[Tuple[str, str], int] = {}
    total_windows = 0
    for doc in docs:
        sentence_terms = [
            {m.term_id for m in matcher.match(sentence)} for sentence in split_sentences(doc.text)
        ]
        m = len(sentence_terms)
        if m == 0:
            continue
        w_eff = min(window, m)
        for start in range(m - w_eff + 1):
            total_windows += 1
            present = set()
            for i in range(start, start + w_eff):
                present |= sentence_terms[i]
            ordered = sorted(present)
            for idx, a in enumerate(ordered):
                singles[a] = singles.get(a, 0) + 1
                for b in ordered[idx + 1 :]:
                    pair = (a, b)
                    joints[pair] = joints.get(pair, 0) + 1
    return [
        CooccurrenceCount(a, b, joint, singles[a], singles[b], total_windows)
        for (a, b), joint in sorted(joints.items())
    ]


def npmi(joint: int, count_a: int, count_b: int, total_windows: int) -> float:
    """Normalized pointwise mutual information in [-1, 1].

    joint == total_windows is the perfect-association limit (the raw
    formula is 0/0 there) and scores exactly 1.
    """
    if joint <= 0:
        return -1.0
    if joint == total_windows:
        return 1.0
    pmi = math.log2((joint * total_windows) / (count_a * count_b))
    return pmi / (-math.log2(joint / total_windows))


def cooccurrences_to_statements(
    counts: Sequence[CooccurrenceCount], store: Store, prov: SourceId
) -> List[Statement]:
    """Emit one relatedTo statement per positively associated unordered pair.

    Weight = npmi clamped to (0, 1]; independent or negatively associated
    pairs (npmi <= 0) are dropped. Subject is the lexicographically smaller
    term id.
    """
    if prov.category not in (SourceCategory.CORPUS, SourceCategory.PUBLICATION):
        raise ValueError(f"corpus statements need corpus/publication provenance, got {prov.category.value}")
    store.register_source(prov.id, prov.category)
    related = vocab.predicate_id(store, vocab.RELATED_TO)
    out = []
    for c in counts:
        score = npmi(c.joint, c.count_a, c.count_b, c.total_windows)
        if score <= 0.0:
            continue
        a, b = sorted((c.term_a, c.term_b))
        out.append(store.assert_statement(a, related, b, prov, min(score, 1.0)))
    return out


def read_verb_lexicon(stream: TextIO) -> Dict[str, str]:
    """CSV `verb,predicate_label` -> {lowercased verb: predicate label}."""
    lexicon = {}
    for lineno, row in enumerate(csv.reader(stream), start=1):
        if not row or row[0].strip().startswith("#"):
            continue
        if lineno == 1 and [c.strip().lower() for c in row[:2]] == ["verb", "predicate_label"]:
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=lineno, column=len(row) + 1)
        lexicon[row[0].strip().lower()] = row[1].strip()
    return lexicon


def relation_label_pass(
    docs: Iterable[CorpusDocument],
    matcher: DictionaryMatcher,
    verb_lexicon: Dict[str, str],
    store: Store,
    prov: SourceId,
) -> List[Statement]:
    """Label adjacent in-sentence term pairs joined by a lexicon verb.

    For each pair of consecutive matched terms in a sentence, the first
    lexicon verb occurring as a whole word strictly between them maps to a
    predicate; matches aggregate corpus-wide and the statement weight is
    min(1, matches / 5). These refine relatedTo statements, they do not
    replace them.
    """
    store.register_source(prov.id, prov.category)
    counts: Dict[Tuple[str, str, str], int] = {}
    for doc in docs:
        for sentence in split_sentences(doc.text):
            matches = matcher.match(sentence)
            for left, right in zip(matches, matches[1:]):
                between = sentence[left.end : right.start].lower()
                for token in _WORD_RE.findall(between):
                    pred_label = verb_lexicon.get(token)
                    if pred_label is not None:
                        key = (left.term_id, pred_label, right.term_id)
                        counts[key] = counts.get(key, 0) + 1
                        break
    out = []
    for (subject, pred_label, obj), n in sorted(counts.items()):
        pred = vocab.predicate_id(store, pred_label)
        out.append(store.assert_statement(subject, pred, obj, prov, min(1.0, n / 5)))
    return out

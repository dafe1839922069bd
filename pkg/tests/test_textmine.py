import math
from pathlib import Path

import pytest

from lhc.store import SourceCategory, SourceId, Store, Term
from lhc.textmine import (
    CooccurrenceCount,
    CorpusDocument,
    DictionaryMatcher,
    cooccurrences_to_statements,
    extract_cooccurrences,
    npmi,
    relation_label_pass,
    split_sentences,
)

from oracles import npmi_oracle, window_counts

CORPUS_SRC = SourceId("corpus:toy", SourceCategory.CORPUS)


def load_corpus(directory: Path):
    return [
        CorpusDocument(p.name, p.read_text(encoding="utf-8"))
        for p in sorted(directory.glob("*.txt"))
    ]


def load_dictionary_terms(path: Path):
    terms = []
    for line in path.read_text(encoding="utf-8").splitlines()[1:]:
        if not line.strip():
            continue
        tid, label, syns = line.split(",")
        terms.append(Term(tid, label, frozenset(s for s in syns.split("|") if s)))
    return terms


@pytest.fixture
def toy_matcher(fixtures_dir):
    return DictionaryMatcher(load_dictionary_terms(fixtures_dir / "dictionary.csv"))


class TestSentencesAndMatching:
    def test_split(self):
        text = "One sentence. Another! A third? trailing"
        assert split_sentences(text) == ["One sentence.", "Another!", "A third?", "trailing"]

    def test_no_split_without_whitespace(self):
        assert split_sentences("pH 7.4 is normal.") == ["pH 7.4 is normal."]

    def test_case_insensitive_whole_word(self, toy_matcher):
        matches = toy_matcher.match("ABACAVIR and abacavirX")
        assert [m.term_id for m in matches] == ["t:abacavir"]

    def test_longest_match_first(self):
        matcher = DictionaryMatcher(
            [Term("t:apobec", "APOBEC"), Term("t:apobec3g", "APOBEC3G")]
        )
        matches = matcher.match("APOBEC3G is an APOBEC protein.")
        assert [m.term_id for m in matches] == ["t:apobec3g", "t:apobec"]

    def test_synonym_and_punctuated_surface(self, toy_matcher):
        matches = toy_matcher.match("ABC therapy needs HLA-B*57:01 screening.")
        assert {m.term_id for m in matches} == {"t:abacavir", "t:hlab5701"}


class TestCooccurrence:
    def test_single_sentence_pair(self, toy_matcher):
        docs = [CorpusDocument("d", "Abacavir causes lipodystrophy.")]
        counts = extract_cooccurrences(docs, toy_matcher, window=1)
        assert len(counts) == 1
        c = counts[0]
        assert (c.term_a, c.term_b) == ("t:abacavir", "t:lipodystrophy")
        assert (c.joint, c.count_a, c.count_b, c.total_windows) == (1, 1, 1, 1)

    def test_never_cooccurring_pair_absent(self, toy_matcher):
        docs = [
            CorpusDocument("d1", "Abacavir is a drug."),
            CorpusDocument("d2", "Lipodystrophy is a condition."),
        ]
        counts = extract_cooccurrences(docs, toy_matcher, window=1)
        assert counts == []

    @pytest.mark.parametrize("window", [1, 2, 3])
    def test_matches_window_enumeration_oracle(self, fixtures_dir, toy_matcher, window):
        docs = load_corpus(fixtures_dir / "corpus")
        counts = extract_cooccurrences(docs, toy_matcher, window=window)
        doc_sentences = [
            [{m.term_id for m in toy_matcher.match(s)} for s in split_sentences(d.text)]
            for d in docs
        ]
        singles, joints, total = window_counts(doc_sentences, window)
        assert {(c.term_a, c.term_b): c.joint for c in counts} == joints
        for c in counts:
            assert c.count_a == singles[c.term_a]
            assert c.count_b == singles[c.term_b]
            assert c.total_windows == total
            assert c.joint <= min(c.count_a, c.count_b) <= c.total_windows

    def test_short_document_forms_one_window(self, toy_matcher):
        docs = [CorpusDocument("d", "Abacavir is here. Lipodystrophy is there.")]
        counts = extract_cooccurrences(docs, toy_matcher, window=5)
        assert len(counts) == 1
        assert counts[0].total_windows == 1
        assert counts[0].joint == 1


class TestNpmi:
    def test_perfect_association(self):
        assert npmi(7, 7, 7, 7) == 1.0

    def test_independence_dropped(self, store):
        # joint/total == (a/total) * (b/total): 2/8 == (4/8) * (4/8)
        counts = [CooccurrenceCount("t:a", "t:b", 2, 4, 4, 8)]
        store.register_term("a"), store.register_term("b")
        assert cooccurrences_to_statements(counts, store, CORPUS_SRC) == []

    def test_pinned_value(self):
        value = npmi(3, 4, 5, 20)
        assert value == pytest.approx(0.5790947844209207, abs=1e-15)
        assert value == npmi_oracle(3, 4, 5, 20)

    def test_statement_emission(self, store):
        store.register_term("a"), store.register_term("b")
        counts = [CooccurrenceCount("t:a", "t:b", 3, 4, 5, 20)]
        (st,) = cooccurrences_to_statements(counts, store, CORPUS_SRC)
        assert st.subject == "t:a" and st.object == "t:b"
        assert st.weight == pytest.approx(0.5790947844209207, abs=1e-15)

    def test_weights_bounded(self, fixtures_dir, toy_matcher):
        store = Store()
        for term in load_dictionary_terms(fixtures_dir / "dictionary.csv"):
            store.add_term(term)
        docs = load_corpus(fixtures_dir / "corpus")
        counts = extract_cooccurrences(docs, toy_matcher, window=1)
        statements = cooccurrences_to_statements(counts, store, CORPUS_SRC)
        assert statements
        for st in statements:
            assert 0.0 < st.weight <= 1.0


class TestRelationLabels:
    def test_single_match_weight(self, fixtures_dir, toy_matcher):
        store = Store()
        for term in load_dictionary_terms(fixtures_dir / "dictionary.csv"):
            store.add_term(term)
        docs = [CorpusDocument("d", "Abacavir causes lipodystrophy.")]
        lexicon = {"causes": "causes"}
        (st,) = relation_label_pass(docs, toy_matcher, lexicon, store, CORPUS_SRC)
        assert st.subject == "t:abacavir"
        assert st.object == "t:lipodystrophy"
        assert store.term(st.predicate).label == "causes"
        assert st.weight == pytest.approx(0.2)

    def test_no_verb_between(self, fixtures_dir, toy_matcher):
        store = Store()
        for term in load_dictionary_terms(fixtures_dir / "dictionary.csv"):
            store.add_term(term)
        docs = [CorpusDocument("d", "Abacavir and lipodystrophy appear together.")]
        out = relation_label_pass(docs, toy_matcher, {"causes": "causes"}, store, CORPUS_SRC)
        assert out == []

    def test_corpus_scan_matches_oracle(self, fixtures_dir, toy_matcher):
        """Exhaustive sentence-scan oracle over adjacent match pairs."""
        store = Store()
        for term in load_dictionary_terms(fixtures_dir / "dictionary.csv"):
            store.add_term(term)
        docs = load_corpus(fixtures_dir / "corpus")
        lexicon = {"causes": "causes", "treats": "treats", "inhibits": "inhibits"}
        got = {
            (st.subject, store.term(st.predicate).label, st.object): st.weight
            for st in relation_label_pass(docs, toy_matcher, lexicon, store, CORPUS_SRC)
        }
        expected_counts = {}
        for doc in docs:
            for sentence in split_sentences(doc.text):
                matches = sorted(toy_matcher.match(sentence), key=lambda m: m.start)
                for i in range(len(matches) - 1):
                    left, right = matches[i], matches[i + 1]
                    gap_words = []
                    word = ""
                    for ch in sentence[left.end : right.start].lower():
                        if ch.isalnum() or ch == "_":
                            word += ch
                        elif word:
                            gap_words.append(word)
                            word = ""
                    if word:
                        gap_words.append(word)
                    for w in gap_words:
                        if w in lexicon:
                            key = (left.term_id, lexicon[w], right.term_id)
                            expected_counts[key] = expected_counts.get(key, 0) + 1
                            break
        expected = {k: min(1.0, n / 5) for k, n in expected_counts.items()}
        assert got == expected
        assert ("t:abacavir", "causes", "t:lipodystrophy") in got
        assert ("t:zidovudine", "treats", "t:hiv") in got


class TestDeterminism:
    def test_byte_identical_output(self, fixtures_dir, toy_matcher):
        def run():
            store = Store()
            for term in load_dictionary_terms(fixtures_dir / "dictionary.csv"):
                store.add_term(term)
            docs = load_corpus(fixtures_dir / "corpus")
            counts = extract_cooccurrences(docs, toy_matcher, window=1)
            statements = cooccurrences_to_statements(counts, store, CORPUS_SRC)
            return "\n".join(f"{st.key}:{st.weight!r}" for st in statements)

        assert run() == run()

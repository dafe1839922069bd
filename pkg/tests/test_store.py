import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhc.errors import EmptyLabel, InvalidWeight, ParseError, UnknownTerm
from lhc.store import SourceCategory, SourceId, Store, TermKind, format_weight

from conftest import random_store
from oracles import scan_query

SRC = SourceId("src:a", SourceCategory.CORPUS)


def make_terms(store, *labels):
    return [store.register_term(label) for label in labels]


class TestAssert:
    def test_fresh_insert(self, toy_store):
        assert toy_store.statement_count == 1
        st = toy_store.query()[0]
        assert st.weight == 0.9
        assert st.provenance == "src:study1"

    def test_upsert_replaces_weight(self, toy_store):
        st = toy_store.query()[0]
        toy_store.assert_statement(st.subject, st.predicate, st.object, st.provenance, 0.5)
        assert toy_store.statement_count == 1
        assert toy_store.statement(st.key).weight == 0.5

    @pytest.mark.parametrize("bad", [0.0, -0.1, 1.0000001, 2.0])
    def test_weight_bounds(self, store, bad):
        x, p, y = make_terms(store, "X", "p", "Y")
        with pytest.raises(InvalidWeight):
            store.assert_statement(x, p, y, SRC, bad)

    def test_weight_one_allowed(self, store):
        x, p, y = make_terms(store, "X", "p", "Y")
        store.assert_statement(x, p, y, SRC, 1.0)
        assert store.statement_count == 1

    def test_unknown_term_rejected(self, store):
        x, p, _ = make_terms(store, "X", "p", "Y")
        with pytest.raises(UnknownTerm):
            store.assert_statement(x, p, "t:ghost", SRC, 0.5)

    @given(st.integers(min_value=1, max_value=20))
    @settings(max_examples=20, deadline=None)
    def test_upsert_cardinality(self, n):
        store = Store()
        x, p, y = make_terms(store, "X", "p", "Y")
        for i in range(n):
            store.assert_statement(x, p, y, SRC, (i + 1) / n)
        assert store.statement_count == 1


class TestRegisterTerm:
    def test_new_term(self, store):
        tid = store.register_term("Abacavir", {"ABC"})
        assert tid == "t:abacavir"
        assert store.term(tid).synonyms == frozenset({"ABC"})

    def test_idempotent(self, store):
        a = store.register_term("Abacavir")
        b = store.register_term("Abacavir")
        c = store.register_term("  ABACAVIR ")
        assert a == b == c
        assert store.term_count == 1

    def test_empty_label(self, store):
        with pytest.raises(EmptyLabel):
            store.register_term("")
        with pytest.raises(EmptyLabel):
            store.register_term("   ")


class TestQuery:
    def test_bound_subject(self, toy_store):
        st = toy_store.query()[0]
        assert toy_store.query(s=st.subject) == [st]
        assert toy_store.query(s="t:lipodystrophy") == []

    def test_all_wildcards(self, toy_store):
        assert len(toy_store.query()) == 1

    def test_matches_linear_scan(self):
        rng = np.random.default_rng(7)
        store = random_store(rng, 20)
        everything = store.query()
        terms = sorted({x for st in everything for x in st.triple})
        patterns = [(None, None, None)]
        for t in terms[:4]:
            patterns += [(t, None, None), (None, t, None), (None, None, t), (t, None, t)]
        for s, p, o in patterns:
            assert store.query(s=s, p=p, o=o) == scan_query(everything, s, p, o)


class TestSnapshot:
    def test_isolation(self, toy_store):
        snap = toy_store.take_snapshot()
        first = toy_store.query()[0]
        toy_store.assert_statement(first.object, first.predicate, first.subject, SRC, 0.4)
        assert snap.statement_count == 1
        assert toy_store.statement_count == 2

    def test_empty_store(self, store):
        assert store.take_snapshot().statement_count == 0

    def test_consecutive_snapshots_equal(self, toy_store):
        a = toy_store.take_snapshot()
        b = toy_store.take_snapshot()
        assert list(a.statements()) == list(b.statements())

    def test_upsert_invisible_to_old_snapshot(self, toy_store):
        snap = toy_store.take_snapshot()
        first = toy_store.query()[0]
        toy_store.assert_statement(*first.key, 0.1)
        assert snap.weight(first.key) == 0.9


class TestRoundTrip:
    def test_csv_round_trip(self):
        rng = np.random.default_rng(3)
        store = random_store(rng, 50)
        out = io.StringIO()
        store.export_csv(out)
        restored = Store()
        n = restored.import_csv(io.StringIO(out.getvalue()))
        assert n == 50 or n == store.statement_count
        assert [s.key + (s.weight,) for s in restored.statements()] == [
            s.key + (s.weight,) for s in store.statements()
        ]

    def test_ntriples_round_trip(self):
        rng = np.random.default_rng(4)
        store = random_store(rng, 30)
        nt, sidecar = io.StringIO(), io.StringIO()
        store.export_ntriples(nt, sidecar)
        restored = Store()
        restored.import_ntriples(io.StringIO(nt.getvalue()), io.StringIO(sidecar.getvalue()))
        assert [s.key + (s.weight,) for s in restored.statements()] == [
            s.key + (s.weight,) for s in store.statements()
        ]

    def test_malformed_line_position(self, store):
        stream = io.StringIO("subject,predicate,object,provenance,weight\na,b,c\n")
        with pytest.raises(ParseError) as err:
            store.import_csv(stream)
        assert err.value.line == 2

    def test_bad_weight_position(self, store):
        stream = io.StringIO("subject,predicate,object,provenance,weight\na,b,c,d,oops\n")
        with pytest.raises(ParseError) as err:
            store.import_csv(stream)
        assert (err.value.line, err.value.column) == (2, 5)

    def test_handwritten_fixture_weights(self, store):
        csv_text = (
            "subject,predicate,object,provenance,weight\n"
            "t:a,t:p,t:b,src:x,0.25\n"
            "t:a,t:p,t:c,src:x,1.0\n"
            't:b,t:p,"t:c",src:y,0.123456789\n'
        )
        n = store.import_csv(io.StringIO(csv_text))
        assert n == 3
        weights = {s.key: s.weight for s in store.statements()}
        assert weights[("t:a", "t:p", "t:b", "src:x")] == 0.25
        assert weights[("t:a", "t:p", "t:c", "src:x")] == 1.0
        assert weights[("t:b", "t:p", "t:c", "src:y")] == 0.123456789

    def test_weight_format(self):
        assert format_weight(0.5) == "0.5"
        assert format_weight(1.0) == "1.0"
        assert format_weight(0.123456789) == "0.123456789"


class TestPersistence:
    def test_journal_replay(self, tmp_path):
        path = tmp_path / "store"
        s = Store(path)
        a, p, b = make_terms(s, "A", "p", "B")
        s.assert_statement(a, p, b, SRC, 0.5)
        s.assert_statement(a, p, b, SRC, 0.75)
        # no close: journal must carry the writes
        reopened = Store(path)
        assert reopened.statement_count == 1
        assert reopened.statement((a, p, b, SRC.id)).weight == 0.75
        assert reopened.term(a).label == "A"

    def test_compacted_reopen(self, tmp_path):
        path = tmp_path / "store"
        s = Store(path)
        a, p, b = make_terms(s, "A", "p", "B")
        s.assert_statement(a, p, b, SRC, 0.9 ** 100)  # full precision must survive
        s.close()
        reopened = Store(path)
        assert reopened.statement((a, p, b, SRC.id)).weight == 0.9 ** 100

    def test_retract_provenance_persisted(self, tmp_path):
        path = tmp_path / "store"
        s = Store(path)
        a, p, b = make_terms(s, "A", "p", "B")
        s.assert_statement(a, p, b, SRC, 0.5)
        s.register_source("derived:similarity", SourceCategory.DERIVED)
        s.assert_statement(b, p, a, "derived:similarity", 0.5)
        s.retract_provenance("derived:similarity")
        reopened = Store(path)
        assert reopened.statement_count == 1


class TestSourceInvariants:
    def test_derived_prefix_enforced(self, store):
        with pytest.raises(Exception):
            store.register_source("derived:similarity", SourceCategory.CORPUS)
        with pytest.raises(Exception):
            store.register_source("src:z", SourceCategory.DERIVED)

    def test_category_conflict(self, store):
        store.register_source("src:a", SourceCategory.CORPUS)
        with pytest.raises(Exception):
            store.register_source("src:a", SourceCategory.CLINICAL)


class TestDictionaryExchange:
    def test_round_trip(self):
        store = Store()
        store.register_term("Abacavir", {"ABC", "abacavir sulfate"})
        store.register_term("HLA-B*57:01")
        out = io.StringIO()
        store.export_terms_csv(out)
        restored = Store()
        added = restored.import_terms_csv(io.StringIO(out.getvalue()))
        assert added == 2
        assert {(t.id, t.label, t.synonyms) for t in restored.terms()} == {
            (t.id, t.label, t.synonyms) for t in store.terms()
        }

    def test_bad_header(self):
        with pytest.raises(ParseError):
            Store().import_terms_csv(io.StringIO("nope\n"))

"""Indexed, persistent store of weighted, provenance-annotated statements.

A statement is the atomic unit of knowledge: a (subject, predicate, object)
triple with the source it came from and a confidence weight in (0, 1].
Re-asserting an existing (s, p, o, provenance) quad replaces its weight, so
the store always records current belief; accumulation across sources only
happens later, in tensor construction.

Writers are serialized behind a lock; readers work on immutable snapshots,
so analysis never blocks feedback and vice versa.

Persistence is a directory of plain-text files: append-only `terms.csv` and
`sources.csv`, a `statements.csv` base image, and an append-only
`journal.csv` replayed on open (`close()` compacts the journal back into the
base image). Weights persist at full `repr` precision; the *exchange*
formats in `export_csv`/`export_ntriples` round to 9 fractional digits.
"""

from __future__ import annotations

import csv
import io
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Iterable, Iterator, Optional

from .errors import EmptyLabel, InvalidWeight, LhcError, ParseError, UnknownStatement, UnknownTerm
from .normalize import slug
from .ntriples import parse_ntriples, serialize_triple


class TermKind(str, Enum):
    ENTITY = "entity"
    PREDICATE = "predicate"
    LITERAL = "literal-value"
    OBSERVATION_HUB = "observation-hub"


class SourceCategory(str, Enum):
    CLINICAL = "clinical"
    PUBLICATION = "publication"
    LINKED_DATA = "linked-data"
    CORPUS = "corpus"
    DERIVED = "derived"
    FEEDBACK = "feedback"


@dataclass(frozen=True)
class Term:
    id: str
    label: str
    synonyms: frozenset = frozenset()
    kind: TermKind = TermKind.ENTITY

    def surfaces(self):
        """Label plus synonyms, the strings this term can be matched by."""
        return (self.label, *sorted(self.synonyms))


@dataclass(frozen=True)
class SourceId:
    id: str
    category: SourceCategory


@dataclass(frozen=True)
class Statement:
    subject: str
    predicate: str
    object: str
    provenance: str
    weight: float

    @property
    def key(self):
        return (self.subject, self.predicate, self.object, self.provenance)

    @property
    def triple(self):
        return (self.subject, self.predicate, self.object)


Quad = tuple  # (subject, predicate, object, provenance)

# Exchange-format header, fixed by the statement-csv interface.
CSV_HEADER = ["subject", "predicate", "object", "provenance", "weight"]

_DERIVED_PREFIX = "derived:"


def format_weight(w: float) -> str:
    """Decimal with up to 9 fractional digits (exchange formats).

    Weights below 5e-10 round to "0.000000000" and are rejected on import;
    such weights only arise from pathological feedback streams and are not
    round-trippable through the exchange formats.
    """
    text = f"{w:.9f}".rstrip("0")
    return text + "0" if text.endswith(".") else text


def check_weight(w) -> float:
    if not isinstance(w, (int, float)) or isinstance(w, bool):
        raise InvalidWeight(w)
    w = float(w)
    if not (0.0 < w <= 1.0):
        raise InvalidWeight(w)
    return w


class _StatementSet:
    """Quad -> weight map with lazily built positional indexes."""

    def __init__(self, weights: dict):
        self._weights = weights
        self._by_s = None
        self._by_p = None
        self._by_o = None

    def __len__(self):
        return len(self._weights)

    def __contains__(self, quad):
        return quad in self._weights

    def weight(self, quad) -> Optional[float]:
        return self._weights.get(quad)

    def _build_indexes(self):
        by_s, by_p, by_o = {}, {}, {}
        for quad in self._weights:
            by_s.setdefault(quad[0], []).append(quad)
            by_p.setdefault(quad[1], []).append(quad)
            by_o.setdefault(quad[2], []).append(quad)
        self._by_s, self._by_p, self._by_o = by_s, by_p, by_o

    def match(self, s=None, p=None, o=None) -> list:
        """Quads matching the bound positions, in (s, p, o, prov) order."""
        if self._by_s is None:
            self._build_indexes()
        candidate_lists = []
        if s is not None:
            candidate_lists.append(self._by_s.get(s, []))
        if p is not None:
            candidate_lists.append(self._by_p.get(p, []))
        if o is not None:
            candidate_lists.append(self._by_o.get(o, []))
        if not candidate_lists:
            return sorted(self._weights)
        base = min(candidate_lists, key=len)
        out = [
            q
            for q in base
            if (s is None or q[0] == s) and (p is None or q[1] == p) and (o is None or q[2] == o)
        ]
        out.sort()
        return out

    def quads(self):
        return self._weights


class Snapshot:
    """Immutable view of the store at a point in time."""

    def __init__(self, terms: dict, sources: dict, weights: dict):
        self._terms = terms
        self._sources = sources
        self._set = _StatementSet(weights)

    @property
    def statement_count(self):
        return len(self._set)

    def term(self, term_id: str) -> Term:
        try:
            return self._terms[term_id]
        except KeyError:
            raise UnknownTerm(term_id) from None

    def has_term(self, term_id: str) -> bool:
        return term_id in self._terms

    def terms(self) -> Iterator[Term]:
        for tid in sorted(self._terms):
            yield self._terms[tid]

    def source(self, source_id: str) -> SourceId:
        return self._sources[source_id]

    def sources(self) -> dict:
        return dict(self._sources)

    def statements(self) -> Iterator[Statement]:
        weights = self._set.quads()
        for quad in sorted(weights):
            yield Statement(*quad, weights[quad])

    def query(self, s=None, p=None, o=None) -> list:
        weights = self._set.quads()
        return [Statement(*q, weights[q]) for q in self._set.match(s, p, o)]

    def weight(self, key) -> Optional[float]:
        return self._set.weight(tuple(key))


class Store:
    """Mutable statement store; pass ``path`` (a directory) to persist."""

    def __init__(self, path=None):
        self._lock = threading.Lock()
        self._terms: dict = {}
        self._slug_index: dict = {}  # canonical slug -> term id
        self._sources: dict = {}
        self._weights: dict = {}
        self._by_s: dict = {}
        self._by_p: dict = {}
        self._by_o: dict = {}
        self._path = str(path) if path is not None else None
        self._terms_file = None
        self._journal_file = None
        if self._path is not None:
            self._load()

    # ------------------------------------------------------------- terms

    def register_term(self, label: str, synonyms: Iterable[str] = (), kind=TermKind.ENTITY) -> str:
        """Intern a term by label; idempotent on the canonical identifier.

        Returns the existing id when the canonical form is already taken
        (the first registration fixes kind and synonyms).
        """
        if not label or not label.strip():
            raise EmptyLabel()
        canonical = slug(label)
        if not canonical:
            raise EmptyLabel()
        with self._lock:
            existing = self._slug_index.get(canonical)
            if existing is not None:
                return existing
            term = Term(
                id="t:" + canonical,
                label=label,
                synonyms=frozenset(s for s in synonyms if s and s != label),
                kind=TermKind(kind),
            )
            return self._add_term_locked(term)

    def add_term(self, term: Term) -> str:
        """Intern a term with an explicit identifier (imports, hubs, derived
        structure terms). Idempotent per id."""
        if not term.id or not term.label:
            raise EmptyLabel()
        with self._lock:
            if term.id in self._terms:
                return term.id
            return self._add_term_locked(term)

    def _add_term_locked(self, term: Term) -> str:
        self._terms[term.id] = term
        canonical = slug(term.label)
        self._slug_index.setdefault(canonical, term.id)
        if self._terms_file is not None:
            w = csv.writer(self._terms_file)
            w.writerow([term.id, term.label, "|".join(sorted(term.synonyms)), term.kind.value])
            self._terms_file.flush()
        return term.id

    def term(self, term_id: str) -> Term:
        try:
            return self._terms[term_id]
        except KeyError:
            raise UnknownTerm(term_id) from None

    def has_term(self, term_id: str) -> bool:
        return term_id in self._terms

    def find_term(self, label: str) -> Optional[str]:
        return self._slug_index.get(slug(label))

    def terms(self) -> Iterator[Term]:
        for tid in sorted(self._terms):
            yield self._terms[tid]

    @property
    def term_count(self):
        return len(self._terms)

    # ----------------------------------------------------------- sources

    def register_source(self, source_id: str, category) -> SourceId:
        category = SourceCategory(category)
        if source_id.startswith(_DERIVED_PREFIX) and category is not SourceCategory.DERIVED:
            raise LhcError(f"source {source_id!r} must carry the derived category")
        if not source_id.startswith(_DERIVED_PREFIX) and category is SourceCategory.DERIVED:
            raise LhcError(f"derived source ids must start with {_DERIVED_PREFIX!r}")
        with self._lock:
            existing = self._sources.get(source_id)
            if existing is not None:
                if existing.category is not category:
                    raise LhcError(
                        f"source {source_id!r} already registered as {existing.category.value}"
                    )
                return existing
            source = SourceId(source_id, category)
            self._sources[source_id] = source
            if self._path is not None:
                with open(os.path.join(self._path, "sources.csv"), "a", encoding="utf-8", newline="") as f:
                    csv.writer(f).writerow([source.id, source.category.value])
            return source

    def source(self, source_id: str) -> SourceId:
        return self._sources[source_id]

    # -------------------------------------------------------- statements

    def assert_statement(self, s: str, p: str, o: str, prov, weight: float) -> Statement:
        """Insert or update one statement; returns the stored statement."""
        weight = check_weight(weight)
        prov_id = prov.id if isinstance(prov, SourceId) else prov
        for tid in (s, p, o):
            if tid not in self._terms:
                raise UnknownTerm(tid)
        if isinstance(prov, SourceId):
            self.register_source(prov.id, prov.category)
        elif prov_id not in self._sources:
            raise LhcError(f"unregistered provenance {prov_id!r}")
        quad = (s, p, o, prov_id)
        with self._lock:
            if quad not in self._weights:
                self._by_s.setdefault(s, set()).add(quad)
                self._by_p.setdefault(p, set()).add(quad)
                self._by_o.setdefault(o, set()).add(quad)
            self._weights[quad] = weight
            self._journal("A", quad, weight)
        return Statement(*quad, weight)

    def retract_provenance(self, prov_id: str) -> int:
        """Remove every statement carrying the given provenance id."""
        with self._lock:
            doomed = [q for q in self._weights if q[3] == prov_id]
            for quad in doomed:
                del self._weights[quad]
                self._by_s[quad[0]].discard(quad)
                self._by_p[quad[1]].discard(quad)
                self._by_o[quad[2]].discard(quad)
            if doomed:
                self._journal("RP", (prov_id, "", "", ""), 0.0)
            return len(doomed)

    def statement(self, key) -> Statement:
        quad = tuple(key)
        w = self._weights.get(quad)
        if w is None:
            raise UnknownStatement(quad)
        return Statement(*quad, w)

    def set_weight(self, key, weight: float) -> Statement:
        """Replace the weight of an existing statement (feedback path)."""
        weight = check_weight(weight)
        quad = tuple(key)
        with self._lock:
            if quad not in self._weights:
                raise UnknownStatement(quad)
            self._weights[quad] = weight
            self._journal("A", quad, weight)
        return Statement(*quad, weight)

    @property
    def statement_count(self):
        return len(self._weights)

    def query(self, s=None, p=None, o=None) -> list:
        """Statements matching the bound positions, sorted by
        (subject, predicate, object, provenance)."""
        candidate_lists = []
        if s is not None:
            candidate_lists.append(self._by_s.get(s, ()))
        if p is not None:
            candidate_lists.append(self._by_p.get(p, ()))
        if o is not None:
            candidate_lists.append(self._by_o.get(o, ()))
        if not candidate_lists:
            quads = sorted(self._weights)
        else:
            base = min(candidate_lists, key=len)
            quads = sorted(
                q
                for q in base
                if (s is None or q[0] == s) and (p is None or q[1] == p) and (o is None or q[2] == o)
            )
        return [Statement(*q, self._weights[q]) for q in quads]

    def statements(self) -> Iterator[Statement]:
        for quad in sorted(self._weights):
            yield Statement(*quad, self._weights[quad])

    def take_snapshot(self) -> Snapshot:
        """Immutable view of everything written before this call."""
        with self._lock:
            return Snapshot(dict(self._terms), dict(self._sources), dict(self._weights))

    # ---------------------------------------------------------- feedback

    def log_feedback(self, key, direction: str, timestamp=None):
        """Append one event to the immutable feedback log (persistent stores)."""
        if self._path is None:
            return
        if timestamp is None:
            timestamp = datetime.now(timezone.utc).isoformat()
        with self._lock:
            with open(os.path.join(self._path, "feedback.log"), "a", encoding="utf-8", newline="") as f:
                csv.writer(f).writerow([timestamp, *key, direction])

    # ------------------------------------------------------ exchange I/O

    def export_csv(self, out: io.TextIOBase):
        """statement-csv exchange format: fixed header, RFC-4180 quoting,
        weights rounded to 9 fractional digits."""
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for st in self.statements():
            writer.writerow([st.subject, st.predicate, st.object, st.provenance, format_weight(st.weight)])

    def import_csv(self, stream: io.TextIOBase, default_category=SourceCategory.CORPUS) -> int:
        """Load statement-csv; returns the number of distinct quads touched.

        Unknown terms are interned (subjects/objects as entities, predicates
        as predicates); unknown sources register under ``default_category``
        except "derived:" ids, which keep the derived category.
        """
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty stream, expected statement-csv header", line=1, column=1)
        if header != CSV_HEADER:
            raise ParseError(f"bad header {header!r}, expected {','.join(CSV_HEADER)}", line=1, column=1)
        touched = set()
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ParseError(f"expected 5 fields, got {len(row)}", line=lineno, column=len(row) + 1)
            s, p, o, prov, weight_text = row
            try:
                weight = float(weight_text)
            except ValueError:
                raise ParseError(f"bad weight {weight_text!r}", line=lineno, column=5)
            try:
                check_weight(weight)
            except InvalidWeight:
                raise ParseError(f"weight {weight_text!r} outside (0, 1]", line=lineno, column=5)
            self._intern_for_import(s, TermKind.ENTITY)
            self._intern_for_import(p, TermKind.PREDICATE)
            self._intern_for_import(o, TermKind.ENTITY)
            if prov not in self._sources:
                cat = SourceCategory.DERIVED if prov.startswith(_DERIVED_PREFIX) else default_category
                self.register_source(prov, cat)
            self.assert_statement(s, p, o, prov, weight)
            touched.add((s, p, o, prov))
        return len(touched)

    def export_terms_csv(self, out: io.TextIOBase):
        """Dictionary exchange format: `id,label,synonyms` (|-separated)."""
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["id", "label", "synonyms"])
        for term in self.terms():
            writer.writerow([term.id, term.label, "|".join(sorted(term.synonyms))])

    def import_terms_csv(self, stream: io.TextIOBase, kind=TermKind.ENTITY) -> int:
        """Load a dictionary CSV; returns the number of terms added."""
        reader = csv.reader(stream)
        header = next(reader, None)
        if header is None or [c.strip() for c in header[:2]] != ["id", "label"]:
            raise ParseError(f"bad dictionary header {header!r}", line=1, column=1)
        added = 0
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(f"expected 3 fields, got {len(row)}", line=lineno, column=len(row) + 1)
            tid, label, syns = row
            if tid in self._terms:
                continue
            self.add_term(Term(tid, label, frozenset(s for s in syns.split("|") if s), kind))
            added += 1
        return added

    def export_ntriples(self, nt_out: io.TextIOBase, sidecar_out: Optional[io.TextIOBase] = None):
        """ntriples-like exchange: one `<s> <p> <o> .` line per statement plus
        a sidecar CSV (line,provenance,weight) keyed by 1-based line number."""
        sidecar = csv.writer(sidecar_out, lineterminator="\n") if sidecar_out is not None else None
        if sidecar is not None:
            sidecar.writerow(["line", "provenance", "weight"])
        for lineno, st in enumerate(self.statements(), start=1):
            nt_out.write(serialize_triple(st.subject, st.predicate, st.object) + "\n")
            if sidecar is not None:
                sidecar.writerow([lineno, st.provenance, format_weight(st.weight)])

    def import_ntriples(
        self,
        nt_stream: io.TextIOBase,
        sidecar_stream: Optional[io.TextIOBase] = None,
        default_provenance: str = "linked-data",
    ) -> int:
        """Load ntriples-like data; returns the number of distinct quads touched.

        Without a sidecar every triple gets weight 1.0 and provenance
        ``default_provenance`` (category linked-data).
        """
        meta = {}
        if sidecar_stream is not None:
            reader = csv.reader(sidecar_stream)
            header = next(reader, None)
            if header != ["line", "provenance", "weight"]:
                raise ParseError(f"bad sidecar header {header!r}", line=1, column=1)
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 3:
                    raise ParseError(f"sidecar expects 3 fields, got {len(row)}", line=lineno, column=len(row) + 1)
                try:
                    meta[int(row[0])] = (row[1], float(row[2]))
                except ValueError:
                    raise ParseError(f"bad sidecar row {row!r}", line=lineno, column=1)
        touched = set()
        for lineno, (s, p, o) in parse_ntriples(nt_stream):
            prov_id, weight = meta.get(lineno, (default_provenance, 1.0))
            if prov_id not in self._sources:
                cat = SourceCategory.DERIVED if prov_id.startswith(_DERIVED_PREFIX) else SourceCategory.LINKED_DATA
                self.register_source(prov_id, cat)
            self._intern_for_import(s, TermKind.ENTITY)
            self._intern_for_import(p, TermKind.PREDICATE)
            self._intern_for_import(o, TermKind.ENTITY)
            self.assert_statement(s, p, o, prov_id, weight)
            touched.add((s, p, o, prov_id))
        return len(touched)

    def _intern_for_import(self, term_id: str, kind: TermKind):
        if term_id in self._terms:
            return
        label = _label_from_id(term_id)
        self.add_term(Term(id=term_id, label=label, kind=kind))

    # ------------------------------------------------------- persistence

    def _journal(self, op: str, quad, weight: float):
        if self._journal_file is None:
            return
        if op == "A":
            csv.writer(self._journal_file).writerow(["A", *quad, repr(weight)])
        else:
            csv.writer(self._journal_file).writerow(["RP", quad[0]])
        self._journal_file.flush()

    def _load(self):
        os.makedirs(self._path, exist_ok=True)
        terms_path = os.path.join(self._path, "terms.csv")
        if os.path.exists(terms_path):
            with open(terms_path, encoding="utf-8", newline="") as f:
                for row in csv.reader(f):
                    if not row:
                        continue
                    tid, label, syns, kind = row
                    synonyms = frozenset(s for s in syns.split("|") if s)
                    self._terms[tid] = Term(tid, label, synonyms, TermKind(kind))
                    self._slug_index.setdefault(slug(label), tid)
        sources_path = os.path.join(self._path, "sources.csv")
        if os.path.exists(sources_path):
            with open(sources_path, encoding="utf-8", newline="") as f:
                for row in csv.reader(f):
                    if row:
                        self._sources[row[0]] = SourceId(row[0], SourceCategory(row[1]))
        base_path = os.path.join(self._path, "statements.csv")
        if os.path.exists(base_path):
            with open(base_path, encoding="utf-8", newline="") as f:
                for row in csv.reader(f):
                    if row:
                        self._insert_raw(tuple(row[:4]), float(row[4]))
        journal_path = os.path.join(self._path, "journal.csv")
        if os.path.exists(journal_path):
            with open(journal_path, encoding="utf-8", newline="") as f:
                for row in csv.reader(f):
                    if not row:
                        continue
                    if row[0] == "A":
                        self._insert_raw(tuple(row[1:5]), float(row[5]))
                    elif row[0] == "RP":
                        prov = row[1]
                        for quad in [q for q in self._weights if q[3] == prov]:
                            del self._weights[quad]
                            self._by_s[quad[0]].discard(quad)
                            self._by_p[quad[1]].discard(quad)
                            self._by_o[quad[2]].discard(quad)
        self._terms_file = open(terms_path, "a", encoding="utf-8", newline="")
        self._journal_file = open(journal_path, "a", encoding="utf-8", newline="")

    def _insert_raw(self, quad, weight):
        if quad not in self._weights:
            self._by_s.setdefault(quad[0], set()).add(quad)
            self._by_p.setdefault(quad[1], set()).add(quad)
            self._by_o.setdefault(quad[2], set()).add(quad)
        self._weights[quad] = weight

    def compact(self):
        """Fold the journal into the base image."""
        if self._path is None:
            return
        with self._lock:
            base_path = os.path.join(self._path, "statements.csv")
            tmp_path = base_path + ".tmp"
            with open(tmp_path, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f)
                for quad in sorted(self._weights):
                    writer.writerow([*quad, repr(self._weights[quad])])
            os.replace(tmp_path, base_path)
            self._journal_file.close()
            self._journal_file = open(os.path.join(self._path, "journal.csv"), "w", encoding="utf-8", newline="")

    def close(self):
        if self._path is None:
            return
        self.compact()
        self._journal_file.close()
        self._terms_file.close()
        self._journal_file = None
        self._terms_file = None


def _label_from_id(term_id: str) -> str:
    """Human-readable label for an interned identifier (IRI local name)."""
    for sep in ("#", "/"):
        if sep in term_id:
            tail = term_id.rsplit(sep, 1)[1]
            if tail:
                return tail
    if term_id.startswith("t:"):
        return term_id[2:]
    return term_id

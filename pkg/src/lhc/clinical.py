"""Clinical-record ingestion via the n-ary observation pattern.

Each record row becomes one observation hub term plus binary facet
statements: (hub, ofPatient, patient), (hub, hasAttribute, attribute),
(hub, hasValue, value), and optionally (hub, atTime, time) and
(hub, hasUnit, unit). All facets carry weight 1.0 and the row's clinical
provenance, so the original rows are exactly reconstructable from the
store (see tests for the inverse-mapping property).
"""

import csv
from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, List, Optional, TextIO, Tuple

from . import vocab
from .errors import EmptyLabel, MalformedRow, ParseError
from .store import SourceCategory, SourceId, Store, Term, TermKind

CLINICAL_HEADER = ["patient", "attribute", "value", "time", "unit"]


@dataclass(frozen=True)
class ClinicalRecordRow:
    patient: str
    attribute: str
    value: str
    time: Optional[str] = None
    unit: Optional[str] = None


@dataclass
class Observation:
    hub: str
    facets: List[Tuple[str, str]] = field(default_factory=list)  # (predicate id, value id)


def read_clinical_csv(stream: TextIO) -> Iterable[ClinicalRecordRow]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != CLINICAL_HEADER:
        raise ParseError(f"bad header {header!r}, expected {','.join(CLINICAL_HEADER)}", line=1, column=1)
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 5:
            raise ParseError(f"expected 5 fields, got {len(row)}", line=lineno, column=len(row) + 1)
        patient, attribute, value, time, unit = (f.strip() for f in row)
        yield ClinicalRecordRow(patient, attribute, value, time or None, unit or None)


def ingest_clinical(rows: Iterable[ClinicalRecordRow], store: Store, prov: SourceId):
    """Materialize rows as observations; returns (observations, errors).

    Malformed rows (missing patient/attribute, unparseable time) are
    collected as MalformedRow errors and skipped; ingestion continues.
    """
    if prov.category is not SourceCategory.CLINICAL:
        raise ValueError(f"clinical ingestion requires a clinical source, got {prov.category.value}")
    store.register_source(prov.id, prov.category)
    preds = vocab.ensure_vocab(store)
    observations: List[Observation] = []
    errors: List[MalformedRow] = []
    for index, row in enumerate(rows):
        if not row.patient or not row.patient.strip():
            errors.append(MalformedRow(index, "missing patient"))
            continue
        if not row.attribute or not row.attribute.strip():
            errors.append(MalformedRow(index, "missing attribute"))
            continue
        if not row.value or not row.value.strip():
            errors.append(MalformedRow(index, "missing value"))
            continue
        if row.time:
            try:
                datetime.fromisoformat(row.time)
            except ValueError:
                errors.append(MalformedRow(index, f"unparseable time {row.time!r}"))
                continue
        try:
            facets = [
                (preds[vocab.OF_PATIENT], store.register_term(row.patient)),
                (preds[vocab.HAS_ATTRIBUTE], store.register_term(row.attribute)),
                (preds[vocab.HAS_VALUE], store.register_term(row.value, kind=TermKind.LITERAL)),
            ]
            if row.time:
                facets.append((preds[vocab.AT_TIME], store.register_term(row.time, kind=TermKind.LITERAL)))
            if row.unit:
                facets.append((preds[vocab.HAS_UNIT], store.register_term(row.unit, kind=TermKind.LITERAL)))
        except EmptyLabel:
            errors.append(MalformedRow(index, "field empty after normalization"))
            continue
        hub_id = store.add_term(
            Term(id=f"obs:{prov.id}:{index}", label=f"observation {index} ({prov.id})", kind=TermKind.OBSERVATION_HUB)
        )
        for pred_id, value_id in facets:
            store.assert_statement(hub_id, pred_id, value_id, prov, 1.0)
        observations.append(Observation(hub=hub_id, facets=facets))
    return observations, errors

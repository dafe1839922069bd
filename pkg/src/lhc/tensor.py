"""Statement tensor and its 2D matrix perspectives.

The tensor is a sparse 3D array of weights indexed by (subject, predicate,
object) positions; duplicate (s, p, o) entries across provenances
aggregate by max, which keeps entries in (0, 1] and treats corroboration
conservatively. Observation hubs are unrolled before indexing: each hub
with patient/attribute/value facets contributes one (patient, attribute,
value) entry so analyses see patient-level features instead of reified
plumbing; atTime/hasUnit facets are observation metadata and stay out of
the tensor.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from . import vocab
from .errors import EmptySnapshot
from .normalize import slug
from .store import Snapshot, SourceCategory, TermKind


@dataclass
class StatementTensor:
    subject_ids: List[str]
    predicate_ids: List[str]
    object_ids: List[str]
    entries: Dict[Tuple[int, int, int], float]

    @property
    def dims(self):
        return (len(self.subject_ids), len(self.predicate_ids), len(self.object_ids))

    def weight(self, s: str, p: str, o: str) -> float:
        try:
            key = (
                self.subject_ids.index(s),
                self.predicate_ids.index(p),
                self.object_ids.index(o),
            )
        except ValueError:
            return 0.0
        return self.entries.get(key, 0.0)


@dataclass
class MatrixView:
    """Rows are one argument mode; columns pair the predicate with the
    remaining argument, so row vectors are distributional profiles."""

    mode: str  # "subject-rows" | "object-rows"
    row_ids: List[str]
    col_keys: List[Tuple[str, str]]  # (predicate id, other-argument id)
    cells: Dict[Tuple[int, int], float]

    @property
    def shape(self):
        return (len(self.row_ids), len(self.col_keys))

    def row_items(self, row: int) -> List[Tuple[int, float]]:
        items = [(j, v) for (i, j), v in self.cells.items() if i == row]
        items.sort()
        return items

    def to_csr(self):
        """(indptr, indices, data) int64/float64 arrays for the kernels."""
        n_rows = len(self.row_ids)
        per_row: List[List[Tuple[int, float]]] = [[] for _ in range(n_rows)]
        for (i, j), v in self.cells.items():
            per_row[i].append((j, v))
        indptr = np.zeros(n_rows + 1, dtype=np.int64)
        indices = []
        data = []
        for i, row in enumerate(per_row):
            row.sort()
            for j, v in row:
                indices.append(j)
                data.append(v)
            indptr[i + 1] = len(indices)
        return indptr, np.asarray(indices, dtype=np.int64), np.asarray(data, dtype=np.float64)

    def row_index(self) -> Dict[str, int]:
        return {tid: i for i, tid in enumerate(self.row_ids)}


def build_tensor(snapshot: Snapshot) -> StatementTensor:
    """Aggregate a snapshot into the tensor, eliminating observation hubs.

    Derived-provenance statements stay out: analysis runs over source
    knowledge only, which is what makes re-running it idempotent.
    """
    if snapshot.statement_count == 0:
        raise EmptySnapshot()
    derived_sources = {
        sid for sid, src in snapshot.sources().items() if src.category is SourceCategory.DERIVED
    }
    hub_ids = {t.id for t in snapshot.terms() if t.kind is TermKind.OBSERVATION_HUB}
    p_of_patient = "t:" + slug(vocab.OF_PATIENT)
    p_attribute = "t:" + slug(vocab.HAS_ATTRIBUTE)
    p_value = "t:" + slug(vocab.HAS_VALUE)

    triple_weight: Dict[Tuple[str, str, str], float] = {}
    facets_by_hub: Dict[str, Dict[str, List[Tuple[str, float]]]] = {}
    for st in snapshot.statements():
        if st.provenance in derived_sources:
            continue
        if st.subject in hub_ids:
            facets_by_hub.setdefault(st.subject, {}).setdefault(st.predicate, []).append(
                (st.object, st.weight)
            )
            continue
        if st.object in hub_ids:
            continue
        key = st.triple
        prev = triple_weight.get(key)
        if prev is None or st.weight > prev:
            triple_weight[key] = st.weight

    for hub in sorted(facets_by_hub):
        facets = facets_by_hub[hub]
        patients = facets.get(p_of_patient)
        attributes = facets.get(p_attribute)
        values = facets.get(p_value)
        if not (patients and attributes and values):
            continue
        patient = patients[0][0]
        attribute = attributes[0][0]
        value, value_weight = values[0]
        key = (patient, attribute, value)
        prev = triple_weight.get(key)
        if prev is None or value_weight > prev:
            triple_weight[key] = value_weight

    subjects = sorted({s for (s, _, _) in triple_weight})
    predicates = sorted({p for (_, p, _) in triple_weight})
    objects = sorted({o for (_, _, o) in triple_weight})
    s_index = {t: i for i, t in enumerate(subjects)}
    p_index = {t: i for i, t in enumerate(predicates)}
    o_index = {t: i for i, t in enumerate(objects)}
    entries = {
        (s_index[s], p_index[p], o_index[o]): w for (s, p, o), w in triple_weight.items()
    }
    return StatementTensor(subjects, predicates, objects, entries)


def matricize(tensor: StatementTensor, mode: str = "subject-rows") -> MatrixView:
    """Flatten to 2D: subject-rows columns are (predicate, object) pairs,
    object-rows columns are (predicate, subject) pairs."""
    if mode not in ("subject-rows", "object-rows"):
        raise ValueError(f"unknown view mode {mode!r}")
    col_set = set()
    for (si, pi, oi) in tensor.entries:
        if mode == "subject-rows":
            col_set.add((tensor.predicate_ids[pi], tensor.object_ids[oi]))
        else:
            col_set.add((tensor.predicate_ids[pi], tensor.subject_ids[si]))
    col_keys = sorted(col_set)
    col_index = {c: j for j, c in enumerate(col_keys)}
    row_ids = tensor.subject_ids if mode == "subject-rows" else tensor.object_ids
    cells: Dict[Tuple[int, int], float] = {}
    for (si, pi, oi), w in tensor.entries.items():
        if mode == "subject-rows":
            i = si
            col = (tensor.predicate_ids[pi], tensor.object_ids[oi])
        else:
            i = oi
            col = (tensor.predicate_ids[pi], tensor.subject_ids[si])
        cells[(i, col_index[col])] = w
    return MatrixView(mode, list(row_ids), col_keys, cells)

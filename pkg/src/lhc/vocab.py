"""Built-in predicate vocabulary and derived-provenance identifiers."""

from .store import SourceCategory, SourceId, Store, TermKind

OF_PATIENT = "ofPatient"
HAS_ATTRIBUTE = "hasAttribute"
HAS_VALUE = "hasValue"
AT_TIME = "atTime"
HAS_UNIT = "hasUnit"
RELATED_TO = "relatedTo"
SIMILAR_TO = "similarTo"
MEMBER_OF = "memberOf"
SUB_CLUSTER_OF = "subClusterOf"
HAS_ANTECEDENT_FEATURE = "hasAntecedentFeature"
HAS_CONSEQUENT_FEATURE = "hasConsequentFeature"
HAS_CONFIDENCE = "hasConfidence"

_PREDICATES = (
    OF_PATIENT,
    HAS_ATTRIBUTE,
    HAS_VALUE,
    AT_TIME,
    HAS_UNIT,
    RELATED_TO,
    SIMILAR_TO,
    MEMBER_OF,
    SUB_CLUSTER_OF,
    HAS_ANTECEDENT_FEATURE,
    HAS_CONSEQUENT_FEATURE,
    HAS_CONFIDENCE,
)

# Provenance ids for derived statements, one per analysis output family.
DERIVED_SIMILARITY = SourceId("derived:similarity", SourceCategory.DERIVED)
DERIVED_CLUSTER = SourceId("derived:cluster", SourceCategory.DERIVED)
DERIVED_TAXONOMY = SourceId("derived:taxonomy", SourceCategory.DERIVED)
DERIVED_RULE = SourceId("derived:rule", SourceCategory.DERIVED)


def predicate_id(store: Store, label: str) -> str:
    return store.register_term(label, kind=TermKind.PREDICATE)


def ensure_vocab(store: Store) -> dict:
    """Intern the built-in predicates; returns label -> term id."""
    return {label: predicate_id(store, label) for label in _PREDICATES}

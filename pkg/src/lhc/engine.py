"""Analysis orchestration: snapshot -> tensor -> derived structures ->
materialized statements + JSON report.

Materialization is idempotent per analysis family: each run first retracts
the prior derived:similarity/cluster/taxonomy/rule statements, then writes
the new ones, so running the same analysis twice leaves the store
identical. Derived statements never carry a non-derived provenance and
source statements are never touched.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List

from . import vocab
from .analysis import ConceptCluster, cluster_terms, similarity_matrix
from .rules import Rule, mine_rules
from .store import Store, Term, TermKind
from .taxonomy import TaxonomyEdge, induce_taxonomy
from .tensor import MatrixView, build_tensor, matricize


@dataclass
class AnalysisResult:
    view: MatrixView
    similar_pairs: List  # (term a, term b, cosine), a < b, sim >= theta_emit
    clusters: List[ConceptCluster]
    taxonomy: List[TaxonomyEdge]
    rules: List[Rule]
    materialized: Dict[str, int] = field(default_factory=dict)


def analyze(
    store: Store,
    theta_sim: float = 0.5,
    tau_tax: float = 0.75,
    theta_emit: float = 0.5,
    minsup: float = 0.2,
    minconf: float = 0.7,
    top_pairs: int = 20,
    materialize_results: bool = True,
) -> AnalysisResult:
    """Run the full derivation pass over the current snapshot."""
    snapshot = store.take_snapshot()
    tensor = build_tensor(snapshot)
    view = matricize(tensor, "subject-rows")
    sim = similarity_matrix(view)
    pairs = []
    n = len(view.row_ids)
    for i in range(n):
        for j in range(i + 1, n):
            if sim[i][j] >= theta_emit:
                pairs.append((view.row_ids[i], view.row_ids[j], float(sim[i][j])))
    pairs.sort(key=lambda t: (-t[2], t[0], t[1]))
    clusters = cluster_terms(view, theta_sim)
    edges = induce_taxonomy(clusters, tau_tax)
    rule_list = mine_rules(view, minsup, minconf)
    result = AnalysisResult(view, pairs, clusters, edges, rule_list)
    if materialize_results:
        result.materialized = materialize(store, result)
    result.similar_pairs = pairs[:top_pairs] if top_pairs >= 0 else pairs
    return result


def materialize(store: Store, result: AnalysisResult) -> Dict[str, int]:
    """Write derived structures back as statements; returns counts per family."""
    for source in (
        vocab.DERIVED_SIMILARITY,
        vocab.DERIVED_CLUSTER,
        vocab.DERIVED_TAXONOMY,
        vocab.DERIVED_RULE,
    ):
        store.register_source(source.id, source.category)
        store.retract_provenance(source.id)

    similar_to = vocab.predicate_id(store, vocab.SIMILAR_TO)
    member_of = vocab.predicate_id(store, vocab.MEMBER_OF)
    sub_cluster_of = vocab.predicate_id(store, vocab.SUB_CLUSTER_OF)
    has_antecedent = vocab.predicate_id(store, vocab.HAS_ANTECEDENT_FEATURE)
    has_consequent = vocab.predicate_id(store, vocab.HAS_CONSEQUENT_FEATURE)
    has_confidence = vocab.predicate_id(store, vocab.HAS_CONFIDENCE)

    counts = {"similarity": 0, "cluster": 0, "taxonomy": 0, "rule": 0}
    for a, b, weight in result.similar_pairs:
        store.assert_statement(a, similar_to, b, vocab.DERIVED_SIMILARITY, min(weight, 1.0))
        counts["similarity"] += 1

    cluster_term_ids = {}
    for cluster in result.clusters:
        label = "concept:" + store.term(cluster.min_member).label
        cid = store.add_term(Term(id=cluster.id, label=label, kind=TermKind.ENTITY))
        cluster_term_ids[cluster.id] = cid
        for member in sorted(cluster.members):
            store.assert_statement(member, member_of, cid, vocab.DERIVED_CLUSTER, 1.0)
            counts["cluster"] += 1

    for edge in result.taxonomy:
        store.assert_statement(
            cluster_term_ids[edge.child],
            sub_cluster_of,
            cluster_term_ids[edge.parent],
            vocab.DERIVED_TAXONOMY,
            min(edge.inclusion, 1.0),
        )
        counts["taxonomy"] += 1

    for index, rule in enumerate(result.rules):
        hub = store.add_term(
            Term(id=f"rule:{index:04d}", label=f"rule {index:04d}", kind=TermKind.ENTITY)
        )
        for feature in rule.antecedent:
            store.assert_statement(hub, has_antecedent, _feature_term(store, feature), vocab.DERIVED_RULE, 1.0)
            counts["rule"] += 1
        store.assert_statement(hub, has_consequent, _feature_term(store, rule.consequent), vocab.DERIVED_RULE, 1.0)
        conf_repr = repr(rule.confidence)
        conf_term = store.add_term(Term(id=f"val:{conf_repr}", label=conf_repr, kind=TermKind.LITERAL))
        store.assert_statement(hub, has_confidence, conf_term, vocab.DERIVED_RULE, 1.0)
        counts["rule"] += 2
    return counts


def _feature_term(store: Store, feature) -> str:
    pred_id, other_id = feature
    label = f"{store.term(pred_id).label}={store.term(other_id).label}"
    return store.add_term(Term(id=f"feature:{pred_id}|{other_id}", label=label, kind=TermKind.ENTITY))


def report_json(result: AnalysisResult) -> str:
    """Deterministic JSON report: clusters, taxonomy, rules, top similar pairs."""
    doc = {
        "clusters": [
            {"id": c.id, "members": sorted(c.members), "size": len(c.members)}
            for c in result.clusters
        ],
        "taxonomy": [
            {"child": e.child, "parent": e.parent, "inclusion": e.inclusion}
            for e in result.taxonomy
        ],
        "rules": [
            {
                "antecedent": [list(f) for f in r.antecedent],
                "consequent": list(r.consequent),
                "support": r.support,
                "confidence": r.confidence,
            }
            for r in result.rules
        ],
        "similar_pairs": [
            {"a": a, "b": b, "similarity": s} for a, b, s in result.similar_pairs
        ],
        "materialized": result.materialized,
    }
    return json.dumps(doc, indent=2, sort_keys=True)

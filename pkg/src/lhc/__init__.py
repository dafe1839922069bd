"""Desk-scale knowledge integration for linked health-care data.

Pipeline: heterogeneous sources (clinical records, text corpora,
linked-data triples) are ingested into one weighted, provenance-annotated
statement store; a tensor/matrix analysis derives similarity, concept
clusters, a taxonomy and association rules and writes them back as derived
statements; a query service exposes search, hypothesis scoring and
feedback over HTTP/JSON.
"""

from .store import SourceCategory, SourceId, Snapshot, Statement, Store, Term, TermKind

__version__ = "0.1.0"

__all__ = [
    "SourceCategory",
    "SourceId",
    "Snapshot",
    "Statement",
    "Store",
    "Term",
    "TermKind",
    "__version__",
]

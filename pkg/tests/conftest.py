import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lhc.store import SourceCategory, SourceId, Store, TermKind  # noqa: E402
from lhc.tensor import MatrixView  # noqa: E402

FIXTURES = Path(__file__).parent.parent / "fixtures"


def view_from_dense(rows, row_ids=None, col_keys=None) -> MatrixView:
    """MatrixView over a dense list-of-lists (zeros stay out of the cells)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    row_ids = row_ids or [f"t:r{i:02d}" for i in range(n_rows)]
    col_keys = col_keys or [("t:p", f"t:c{j:02d}") for j in range(n_cols)]
    cells = {
        (i, j): float(v)
        for i, row in enumerate(rows)
        for j, v in enumerate(row)
        if v
    }
    return MatrixView("subject-rows", list(row_ids), list(col_keys), cells)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def store() -> Store:
    return Store()


@pytest.fixture
def toy_store() -> Store:
    """One Abacavir/lipodystrophy statement, the smallest useful store."""
    s = Store()
    a = s.register_term("Abacavir", {"ABC"})
    p = s.register_term("hasAdverseEffect", kind=TermKind.PREDICATE)
    b = s.register_term("Lipodystrophy")
    s.assert_statement(a, p, b, SourceId("src:study1", SourceCategory.PUBLICATION), 0.9)
    return s


def random_store(rng, n_statements, n_terms=None, weight_grid=10**9):
    """Store with random statements; weights are exactly representable at
    9 fractional digits so the exchange formats round-trip them."""
    s = Store()
    n_terms = n_terms or max(4, n_statements // 3)
    entities = [s.register_term(f"entity {i}") for i in range(n_terms)]
    predicates = [s.register_term(f"relation {i}", kind=TermKind.PREDICATE) for i in range(max(2, n_terms // 4))]
    sources = [
        s.register_source(f"src:{i}", SourceCategory.CORPUS).id for i in range(3)
    ]
    for _ in range(n_statements):
        subj = entities[int(rng.integers(len(entities)))]
        pred = predicates[int(rng.integers(len(predicates)))]
        obj = entities[int(rng.integers(len(entities)))]
        prov = sources[int(rng.integers(len(sources)))]
        w = int(rng.integers(1, weight_grid + 1)) / weight_grid
        s.assert_statement(subj, pred, obj, prov, w)
    return s

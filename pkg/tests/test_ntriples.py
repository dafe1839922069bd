import io

import pytest

from lhc.errors import ParseError
from lhc.ntriples import parse_line, parse_ntriples, serialize_triple
from lhc.store import Store


def test_serialize_parse_line():
    line = serialize_triple("t:a", "t:p", "t:b")
    assert line == "<t:a> <t:p> <t:b> ."
    assert parse_line(line, 1) == ("t:a", "t:p", "t:b")


def test_missing_terminal_dot():
    with pytest.raises(ParseError) as err:
        parse_line("<a> <b> <c>", 3)
    assert err.value.line == 3


def test_error_column_points_at_problem():
    with pytest.raises(ParseError) as err:
        parse_line("<a> b <c> .", 1)
    assert err.value.column == 5


def test_comments_and_blanks_skipped():
    stream = io.StringIO("# header\n\n<a> <b> <c> .\n")
    assert list(parse_ntriples(stream)) == [(3, ("a", "b", "c"))]


def test_serializer_rejects_unsafe_ids():
    with pytest.raises(ValueError):
        serialize_triple("t:a b", "t:p", "t:c")


def test_single_line_import_defaults():
    store = Store()
    n = store.import_ntriples(io.StringIO("<t:a> <t:p> <t:b> .\n"), default_provenance="linked.nt")
    assert n == 1
    st = store.query()[0]
    assert st.weight == 1.0
    assert st.provenance == "linked.nt"
    assert store.source("linked.nt").category.value == "linked-data"


def test_duplicate_triples_deduplicate():
    # 10 lines of which 2 are the same triple -> 9 distinct statements
    lines = [f"<t:s{i}> <t:p> <t:o{i}> ." for i in range(9)]
    lines.append(lines[4])
    store = Store()
    n = store.import_ntriples(io.StringIO("\n".join(lines) + "\n"))
    assert n == 9
    assert store.statement_count == 9

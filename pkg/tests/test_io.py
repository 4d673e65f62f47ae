import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conjlat.corpus import BUILTINS, builtin
from conjlat.errors import AxiomViolation, NotUnionClosed, ParseError
from conjlat.io import dumps, load, loads, structure_from_dict, structure_to_dict
from conjlat.search import enumerate_semilattices


def test_join_table_document():
    L = loads('{"kind": "join_table", "names": ["0", "1"], "table": [[0, 1], [1, 1]]}')
    assert L.names == ("0", "1") and L.top == 1


def test_set_family_document():
    L = loads('{"kind": "set_family", "universe": ["x", "y"], "sets": [[], ["x"], ["y"], ["x", "y"]]}')
    assert L.n == 4 and L.names[L.top] == "xy"


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as exc:
        loads('{"kind": "join_table",\n "names": [}')
    assert exc.value.position.startswith("line 2")


def test_wrong_shapes_report_path():
    with pytest.raises(ParseError) as exc:
        loads('{"kind": "join_table", "names": ["a"], "table": [0]}')
    assert exc.value.position == "$.table[0]"
    with pytest.raises(ParseError) as exc:
        loads('{"kind": "poset"}')
    assert exc.value.position == "$.kind"
    with pytest.raises(ParseError):
        loads("[1, 2]")


def test_semantic_errors_pass_through():
    with pytest.raises(AxiomViolation):
        loads('{"kind": "join_table", "names": ["a", "b"], "table": [[0, 1], [0, 1]]}')
    with pytest.raises(NotUnionClosed):
        loads('{"kind": "set_family", "universe": ["x", "y"], "sets": [["x"], ["y"]]}')


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load(tmp_path / "absent.json")


def test_builtins_roundtrip():
    for name in BUILTINS:
        L = builtin(name)
        for prefer_family in (True, False):
            M = loads(dumps(L, prefer_family))
            assert M.names == L.names and M.table_rows == L.table_rows
    with pytest.raises(ParseError):
        builtin("missing")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_enumerated_roundtrip(n, pick):
    classes = enumerate_semilattices(n)
    L = classes[pick % len(classes)]
    doc = json.loads(json.dumps(structure_to_dict(L, prefer_family=False)))
    M = structure_from_dict(doc)
    assert M.table_rows == L.table_rows

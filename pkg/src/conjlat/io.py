"""Structure documents: the JSON form shared by the CLI and witness files.

Two kinds are accepted::

    {"kind": "join_table", "names": [...], "table": [[...], ...]}
    {"kind": "set_family", "universe": [...], "sets": [[...], ...]}
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import JoinSemilattice, from_join_table, from_set_family, members
from .errors import ParseError


def _expect_list(value, path):
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", path)
    return value


def structure_from_dict(doc) -> JoinSemilattice:
    if not isinstance(doc, dict):
        raise ParseError("structure document must be a JSON object", "$")
    kind = doc.get("kind")
    if kind == "join_table":
        names = _expect_list(doc.get("names"), "$.names")
        table = _expect_list(doc.get("table"), "$.table")
        for i, row in enumerate(table):
            _expect_list(row, f"$.table[{i}]")
        return from_join_table([str(s) for s in names], table)
    if kind == "set_family":
        universe = _expect_list(doc.get("universe"), "$.universe")
        sets = _expect_list(doc.get("sets"), "$.sets")
        for i, s in enumerate(sets):
            _expect_list(s, f"$.sets[{i}]")
        return from_set_family([str(u) for u in universe], sets)
    raise ParseError(f"unknown kind {kind!r}", "$.kind")


def loads(text: str) -> JoinSemilattice:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return structure_from_dict(doc)


def load(path) -> JoinSemilattice:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def structure_to_dict(L: JoinSemilattice, prefer_family: bool = True) -> dict:
    if prefer_family and L.family is not None:
        universe, masks = L.family
        return {
            "kind": "set_family",
            "universe": list(universe),
            "sets": [[universe[i] for i in members(m)] for m in masks],
        }
    return {"kind": "join_table", "names": list(L.names), "table": L.table_rows}


def dumps(L: JoinSemilattice, prefer_family: bool = True) -> str:
    return json.dumps(structure_to_dict(L, prefer_family), ensure_ascii=False)

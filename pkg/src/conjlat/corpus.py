"""Small named structures that ship with the package."""

from __future__ import annotations

from .core import JoinSemilattice, MorphismTable, from_join_table, from_set_family
from .errors import ParseError


def one() -> JoinSemilattice:
    return from_join_table(["1"], [[0]])


def chain2() -> JoinSemilattice:
    return from_join_table(["0", "1"], [[0, 1], [1, 1]])


def chain3() -> JoinSemilattice:
    return from_join_table(["0", "a", "1"], [[0, 1, 2], [1, 1, 2], [2, 2, 2]])


def free_join() -> JoinSemilattice:
    """Two incomparable elements and their join, nothing below."""
    return from_join_table(["x", "y", "1"], [[0, 2, 2], [2, 1, 2], [2, 2, 2]])


def b2() -> JoinSemilattice:
    return from_set_family(["x", "y"], [[], ["x"], ["y"], ["x", "y"]])


def lv() -> JoinSemilattice:
    """∅ and the two- and three-element subsets of {x, y, z}."""
    return from_set_family(["x", "y", "z"], [[], ["x", "y"], ["x", "z"], ["y", "z"], ["x", "y", "z"]])


def p3() -> JoinSemilattice:
    """Nonempty subsets of {a, b, c}."""
    sets = [["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["b", "c"], ["a", "b", "c"]]
    return from_set_family(["a", "b", "c"], sets)


def b3() -> JoinSemilattice:
    u = ["a", "b", "c"]
    return from_set_family(u, [[u[i] for i in range(3) if k >> i & 1] for k in range(8)])


def sierpinski() -> JoinSemilattice:
    return from_set_family(["u", "v"], [[], ["u"], ["u", "v"]])


def nonfunctoriality_example() -> MorphismTable:
    """P{a,b,c} -> P{d} sending ∅ and {a} to ∅ and everything else to {d}."""
    src = b3()
    tgt = from_set_family(["d"], [[], ["d"]])
    a_only = src.mask(["∅", "a"])
    return MorphismTable(src, tgt, tuple(0 if a_only >> x & 1 else 1 for x in src.elements))


BUILTINS = {
    "one": one,
    "chain2": chain2,
    "chain3": chain3,
    "freejoin": free_join,
    "B2": b2,
    "LV": lv,
    "P3": p3,
    "B3": b3,
    "sierpinski": sierpinski,
}

# the set exercised by `verify --builtin`
DEFAULT_CORPUS = ("chain2", "chain3", "freejoin", "B2", "LV", "P3", "B3")


def builtin(name: str) -> JoinSemilattice:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ParseError(f"no builtin structure {name!r}; known: {', '.join(BUILTINS)}") from None

"""Finite join-semilattices, element sets and morphism tables.

Elements are dense ids ``0..n-1``. Subsets of the carrier (ideals, filters,
congruence classes, ...) are plain ``int`` bitmasks: bit ``i`` set means
element ``i`` is a member.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    AxiomViolation,
    RangeError,
    SizeGuard,
    SizeMismatch,
    NotUnionClosed,
    ValidationError,
)

DEFAULT_SIZE_GUARD = 64

ElementSet = int


def members(mask: int) -> Iterator[int]:
    """Yield the ids whose bits are set, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    out = 0
    for i in ids:
        out |= 1 << i
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def set_label(labels: Sequence[str]) -> str:
    """Render a set of point labels compactly: xy for {x,y}, ∅ for the empty set."""
    if not labels:
        return "∅"
    if all(len(s) == 1 for s in labels):
        return "".join(labels)
    return "{" + ",".join(labels) + "}"


class JoinSemilattice:
    """A validated finite join-semilattice given by its join table.

    Build instances with :func:`from_join_table` or :func:`from_set_family`.
    ``family`` keeps the originating set family (universe labels and one
    bitmask per element) when there is one, for serialisation.
    """

    def __init__(self, names, table, *, family=None, size_guard=DEFAULT_SIZE_GUARD):
        n = len(table)
        if n == 0:
            raise ValidationError("a join-semilattice needs at least one element")
        if n > size_guard:
            raise SizeGuard(f"{n} elements exceeds the validation guard {size_guard}")
        if len(names) != n:
            raise SizeMismatch(f"{len(names)} names for a {n}x{n} table")
        if len(set(names)) != n:
            raise ValidationError("element names must be distinct")
        rows = []
        for i, row in enumerate(table):
            if len(row) != n:
                raise SizeMismatch(f"row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                    raise RangeError(f"table[{i}][{j}] = {v!r} is not an element id")
            rows.append(tuple(row))
        self.n = n
        self.names = tuple(str(s) for s in names)
        self.join = tuple(rows)
        self.family = family
        self._check_axioms()
        self.full = (1 << n) - 1
        j = self.join
        self.down = tuple(mask_of(x for x in range(n) if j[x][a] == a) for a in range(n))
        self.up = tuple(mask_of(x for x in range(n) if j[a][x] == x) for a in range(n))
        top = 0
        for x in range(n):
            top = j[top][x]
        if self.down[top] != self.full:
            raise ValidationError("join of all elements is not a top element")
        self.top = top
        bottoms = [x for x in range(n) if self.up[x] == self.full]
        self.bottom: Optional[int] = bottoms[0] if bottoms else None

    def _check_axioms(self):
        j, n = self.join, self.n
        for a in range(n):
            if j[a][a] != a:
                raise AxiomViolation("idempotence", (a, a))
        for a in range(n):
            for b in range(a + 1, n):
                if j[a][b] != j[b][a]:
                    raise AxiomViolation("commutativity", (a, b))
        for a in range(n):
            ja = j[a]
            for b in range(n):
                ab = ja[b]
                jab, jb = j[ab], j[b]
                for c in range(n):
                    if jab[c] != ja[jb[c]]:
                        raise AxiomViolation("associativity", (a, b, c))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"JoinSemilattice({list(self.names)})"

    def __eq__(self, other):
        return (
            isinstance(other, JoinSemilattice)
            and self.names == other.names
            and self.join == other.join
        )

    def __hash__(self):
        return hash((self.names, self.join))

    @property
    def elements(self) -> range:
        return range(self.n)

    def leq(self, a: int, b: int) -> bool:
        return self.join[a][b] == b

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.join[a][b] == b

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        return mask_of(self.index(s) for s in names)

    def join_of(self, mask: int) -> Optional[int]:
        """Join of a nonempty element set; ``None`` for the empty set."""
        out = None
        j = self.join
        for x in members(mask):
            out = x if out is None else j[out][x]
        return out

    def render(self, mask: int) -> list:
        """Member names in element-id order."""
        return [self.names[i] for i in members(mask)]

    def render_set(self, mask: int) -> str:
        return "{" + ",".join(self.render(mask)) + "}"

    @cached_property
    def table_rows(self):
        return [list(r) for r in self.join]

    @cached_property
    def is_lattice(self) -> bool:
        return meet_structure(self).table is not None


def from_join_table(names: Sequence[str], table, **kwargs) -> JoinSemilattice:
    return JoinSemilattice(names, table, **kwargs)


def from_set_family(universe: Sequence[str], sets, **kwargs) -> JoinSemilattice:
    """Semilattice of a union-closed family; element ids follow the order of ``sets``."""
    universe = [str(u) for u in universe]
    if len(set(universe)) != len(universe):
        raise ValidationError("universe labels must be distinct")
    pos = {u: i for i, u in enumerate(universe)}
    masks = []
    for k, s in enumerate(sets):
        m = 0
        for u in s:
            if str(u) not in pos:
                raise RangeError(f"set {k} mentions {u!r}, not in the universe")
            m |= 1 << pos[str(u)]
        masks.append(m)
    return from_masks(universe, masks, **kwargs)


def from_masks(universe: Sequence[str], masks: Sequence[int], **kwargs) -> JoinSemilattice:
    if not masks:
        raise ValidationError("a set family needs at least one member")
    index = {}
    for k, m in enumerate(masks):
        if m in index:
            raise ValidationError(f"sets {index[m]} and {k} are equal")
        index[m] = k
    n = len(masks)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            u = masks[a] | masks[b]
            if u not in index:
                raise NotUnionClosed((a, b))
            table[a][b] = table[b][a] = index[u]
    names = [set_label([universe[i] for i in members(m)]) for m in masks]
    if len(set(names)) != n:
        names = [f"s{k}" for k in range(n)]
    return JoinSemilattice(names, table, family=(tuple(universe), tuple(masks)), **kwargs)


class Order(enum.Enum):
    LEQ = "leq"
    GEQ = "geq"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def order_query(L: JoinSemilattice, a: int, b: int) -> Order:
    if not (0 <= a < L.n and 0 <= b < L.n):
        raise RangeError(f"({a}, {b}) out of range for {L.n} elements")
    if a == b:
        return Order.EQUAL
    if L.leq(a, b):
        return Order.LEQ
    if L.leq(b, a):
        return Order.GEQ
    return Order.INCOMPARABLE


@dataclass(frozen=True)
class MeetStructure:
    table: Optional[tuple]
    missing: Optional[tuple]


def meet_structure(L: JoinSemilattice) -> MeetStructure:
    """Meet table when every pair has a greatest lower bound, else the first pair without one."""
    n = L.n
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            lower = L.down[a] & L.down[b]
            glb = None
            for c in members(lower):
                if L.down[c] & lower == lower:
                    glb = c
                    break
            if glb is None:
                return MeetStructure(None, (a, b))
            table[a][b] = table[b][a] = glb
    return MeetStructure(tuple(tuple(r) for r in table), None)


@dataclass(frozen=True)
class MorphismTable:
    source: JoinSemilattice
    target: JoinSemilattice
    mapping: tuple

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != self.source.n:
            raise SizeMismatch(
                f"map has {len(self.mapping)} entries, source has {self.source.n} elements"
            )
        for a, v in enumerate(self.mapping):
            if not 0 <= v < self.target.n:
                raise SizeMismatch(f"map[{a}] = {v} is not a target element")

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def preimage(self, target_mask: int) -> int:
        return mask_of(a for a, v in enumerate(self.mapping) if target_mask >> v & 1)

    def image(self, source_mask: int) -> int:
        return mask_of(self.mapping[a] for a in members(source_mask))

    @cached_property
    def flags(self) -> "MorphismFlags":
        return check_morphism(self)

    @property
    def is_one_join_morphism(self) -> bool:
        return self.flags.preserves_join and self.flags.preserves_top


@dataclass(frozen=True)
class MorphismFlags:
    preserves_join: bool
    join_witness: Optional[tuple]
    preserves_top: bool
    top_witness: Optional[int]


def check_morphism(f: MorphismTable) -> MorphismFlags:
    S, T, m = f.source, f.target, f.mapping
    join_witness = None
    for a in range(S.n):
        for b in range(a + 1, S.n):
            if m[S.join[a][b]] != T.join[m[a]][m[b]]:
                join_witness = (a, b)
                break
        if join_witness:
            break
    top_ok = m[S.top] == T.top
    return MorphismFlags(
        join_witness is None, join_witness, top_ok, None if top_ok else S.top
    )


def check_meet_preservation(f: MorphismTable) -> tuple:
    """(preserves_meet, witness pair). Both ends must be lattices."""
    ms, mt = meet_structure(f.source).table, meet_structure(f.target).table
    if ms is None or mt is None:
        raise ValidationError("meet preservation needs lattices at both ends")
    m = f.mapping
    for a in range(f.source.n):
        for b in range(a + 1, f.source.n):
            if m[ms[a][b]] != mt[m[a]][m[b]]:
                return False, (a, b)
    return True, None


def identity(L: JoinSemilattice) -> MorphismTable:
    return MorphismTable(L, L, tuple(range(L.n)))


def relabel(L: JoinSemilattice, perm: Sequence[int]) -> JoinSemilattice:
    """Copy of ``L`` in which old element ``a`` gets id ``perm[a]``."""
    n = L.n
    inv = [0] * n
    for a, p in enumerate(perm):
        inv[p] = a
    table = [[perm[L.join[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]
    names = [L.names[inv[x]] for x in range(n)]
    return JoinSemilattice(names, table)

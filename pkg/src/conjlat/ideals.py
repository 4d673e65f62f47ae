"""Ideals, filters, and the ideal lattice ``Id L``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .core import JoinSemilattice, MorphismTable, members, from_join_table
from .errors import PreconditionFailed, SizeGuard

IDEAL_LATTICE_GUARD = 63


@dataclass(frozen=True)
class SubsetKinds:
    ideal: bool
    filter: bool
    upset: bool
    downset: bool
    prime_ideal: bool


def is_downset(L: JoinSemilattice, S: int) -> bool:
    return all(L.down[a] & ~S == 0 for a in members(S))


def is_upset(L: JoinSemilattice, S: int) -> bool:
    return all(L.up[a] & ~S == 0 for a in members(S))


def is_ideal(L: JoinSemilattice, S: int) -> bool:
    if not is_downset(L, S):
        return False
    ids = list(members(S))
    j = L.join
    return all(S >> j[a][b] & 1 for i, a in enumerate(ids) for b in ids[i + 1:])


def is_filter(L: JoinSemilattice, S: int) -> bool:
    if S == 0 or not is_upset(L, S):
        return False
    ids = list(members(S))
    return all(L.down[a] & L.down[b] & S for i, a in enumerate(ids) for b in ids[i + 1:])


def is_prime(L: JoinSemilattice, S: int) -> bool:
    return S != 0 and is_ideal(L, S) and is_filter(L, L.full & ~S)


def classify_subset(L: JoinSemilattice, S: int) -> SubsetKinds:
    return SubsetKinds(
        ideal=is_ideal(L, S),
        filter=is_filter(L, S),
        upset=is_upset(L, S),
        downset=is_downset(L, S),
        prime_ideal=is_prime(L, S),
    )


def principal_downset(L: JoinSemilattice, a: int) -> int:
    return L.down[a]


def principal_upset(L: JoinSemilattice, a: int) -> int:
    return L.up[a]


def generated_ideal(L: JoinSemilattice, X: int) -> int:
    # a finite generating set: <X> is the down-set of its join
    if X == 0:
        return 0
    return L.down[L.join_of(X)]


def join_ideals(L: JoinSemilattice, I: int, J: int) -> int:
    return generated_ideal(L, I | J)


@dataclass(frozen=True)
class IdealLattice:
    """``Id L``: slot 0 is the empty ideal, slot ``a+1`` is the principal ideal of ``a``."""

    parent: JoinSemilattice
    ideals: tuple
    improper: tuple
    lattice: JoinSemilattice
    embedding: tuple

    def index(self, ideal: int) -> int:
        return self.ideals.index(ideal)

    @property
    def nonempty(self) -> tuple:
        return self.ideals[1:]

    def name(self, ideal: int) -> str:
        return self.lattice.names[self.index(ideal)]


def ideal_lattice(L: JoinSemilattice) -> IdealLattice:
    return _ideal_lattice(L)


@lru_cache(maxsize=256)
def _ideal_lattice(L: JoinSemilattice) -> IdealLattice:
    if L.n > IDEAL_LATTICE_GUARD:
        raise SizeGuard(f"Id L needs |L| <= {IDEAL_LATTICE_GUARD}, got {L.n}")
    ideals = (0,) + tuple(L.down[a] for a in L.elements)
    pos = {I: k for k, I in enumerate(ideals)}
    m = len(ideals)
    table = [[pos[join_ideals(L, ideals[p], ideals[q])] for q in range(m)] for p in range(m)]
    names = ["∅"] + ["↓" + s for s in L.names]
    improper = tuple(I == 0 or I == L.full for I in ideals)
    lat = from_join_table(names, table)
    return IdealLattice(L, ideals, improper, lat, tuple(a + 1 for a in L.elements))


def ideals_of(L: JoinSemilattice, include_empty: bool = True) -> tuple:
    ideals = tuple(L.down[a] for a in L.elements)
    return ((0,) + ideals) if include_empty else ideals


def prime_ideals(L: JoinSemilattice) -> list:
    return [I for I in ideals_of(L, include_empty=False) if is_prime(L, I)]


def maximal_ideals(L: JoinSemilattice, relative_to: Optional[int] = None) -> list:
    """All ``a``-maximal ideals (``a`` defaults to top), found by greedy upward extension."""
    a = L.top if relative_to is None else relative_to
    found = []
    for start in ideals_of(L):
        if start >> a & 1:
            continue
        I = start
        grown = True
        while grown:
            grown = False
            for x in L.elements:
                if I >> x & 1:
                    continue
                J = generated_ideal(L, I | 1 << x)
                if not J >> a & 1:
                    I = J
                    grown = True
                    break
        if I not in found:
            found.append(I)
    return found


def maximal_proper_ideals(L: JoinSemilattice) -> list:
    """Proper ideals contained in no larger proper ideal."""
    proper = [I for I in ideals_of(L) if I != L.full]
    return [I for I in proper if not any(J != I and J & I == I for J in proper)]


def intersection_of_maximal_above(L: JoinSemilattice, S: int, maximal=None) -> int:
    """Intersection of the maximal ideals containing ``S`` (all of ``L`` when none do)."""
    out = L.full
    for m in maximal_ideals(L) if maximal is None else maximal:
        if m & S == S:
            out &= m
    return out


def upsets(L: JoinSemilattice, guard: int = 20) -> list:
    if L.n > guard:
        raise SizeGuard(f"up-set enumeration needs |L| <= {guard}")
    return [U for U in range(1 << L.n) if is_upset(L, U)]


def filters(L: JoinSemilattice, guard: int = 20) -> list:
    return [F for F in upsets(L, guard) if is_filter(L, F)]


def down_map(L: JoinSemilattice) -> MorphismTable:
    """The embedding a -> ↓a into Id L."""
    IL = ideal_lattice(L)
    return MorphismTable(L, IL.lattice, IL.embedding)


def ideal_extension(f: MorphismTable) -> tuple:
    """f̄(I) = ⋁f[I] on Id L (in ``ideal_lattice`` order), for f into a finite lattice.

    The empty ideal goes to the bottom of the target.
    """
    J = f.target
    if J.bottom is None:
        raise PreconditionFailed("target is a complete lattice", "no bottom element")
    out = []
    for I in ideal_lattice(f.source).ideals:
        out.append(J.bottom if I == 0 else J.join_of(f.image(I)))
    return tuple(out)


def check_ideal_extension(f: MorphismTable) -> bool:
    """f̄∘↓ = f, f̄ keeps the empty join, and f̄ preserves binary joins of ideals."""
    L, J = f.source, f.target
    IL = ideal_lattice(L)
    ext = ideal_extension(f)
    if any(ext[IL.embedding[a]] != f(a) for a in L.elements):
        return False
    if ext[0] != J.bottom:
        return False
    m = len(IL.ideals)
    return all(
        ext[IL.lattice.join[p][q]] == J.join[ext[p]][ext[q]] for p in range(m) for q in range(m)
    )

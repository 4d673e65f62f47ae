"""Finite topological spaces as families of point bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


def close_under_intersection(family: Iterable[int], full: int) -> set:
    """Finite intersections of ``family``; the empty intersection contributes ``full``."""
    out = {full}
    for s in family:
        out |= {s & t for t in out}
    return out


def close_under_union(family: Iterable[int]) -> set:
    """All unions of ``family``; the empty union contributes ∅."""
    out = {0}
    for s in family:
        out |= {s | t for t in out}
    return out


@dataclass(frozen=True)
class TopSpace:
    n_points: int
    opens: frozenset

    @property
    def full(self) -> int:
        return (1 << self.n_points) - 1

    def __len__(self):
        return len(self.opens)

    def is_open(self, s: int) -> bool:
        return s in self.opens

    def t1_witness(self) -> Optional[tuple]:
        return t1_witness(self.n_points, self.opens)

    @property
    def is_t1(self) -> bool:
        return self.t1_witness() is None

    @property
    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << self.n_points

    def sorted_opens(self) -> list:
        return sorted(self.opens, key=lambda s: (bin(s).count("1"), s))


def generate_topology(n_points: int, subbase: Iterable[int]) -> TopSpace:
    """Close a subbase under finite intersections, then under all unions."""
    full = (1 << n_points) - 1
    pi = close_under_intersection(set(subbase), full)
    return TopSpace(n_points, frozenset(close_under_union(pi)))


def t1_witness(n_points: int, family: Iterable[int]) -> Optional[tuple]:
    """First ordered pair (x, y), x ≠ y, with no member containing x and omitting y."""
    family = list(family)
    for x in range(n_points):
        for y in range(n_points):
            if x != y and not any(s >> x & 1 and not s >> y & 1 for s in family):
                return (x, y)
    return None


def is_topology(n_points: int, opens: Iterable[int]) -> bool:
    opens = set(opens)
    full = (1 << n_points) - 1
    if 0 not in opens or full not in opens:
        return False
    return all(s | t in opens and s & t in opens for s in opens for t in opens)


def is_base_for(n_points: int, opens: Iterable[int], base: Iterable[int]) -> bool:
    opens = frozenset(opens)
    base = set(base)
    if not base <= opens:
        return False
    return frozenset(close_under_union(base)) == opens

"""Pierce congruences R^Y, quotients, conjunctivity and ideal conjunctivity."""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import cached_property
from typing import Optional

from .core import JoinSemilattice, MorphismTable, mask_of, members, from_join_table
from .errors import InternalInconsistency, NotACongruence, SizeGuard
from .ideals import (
    generated_ideal,
    ideal_lattice,
    intersection_of_maximal_above,
    maximal_ideals,
    maximal_proper_ideals,
)

CONGRUENCE_GUARD = 8


def supercomplements(L: JoinSemilattice, Y: int, a: int) -> int:
    """(Y:a), the x with x ∨ a in Y."""
    ja = L.join[a]
    return mask_of(x for x in L.elements if Y >> ja[x] & 1)


@dataclass(frozen=True)
class Congruence:
    """A partition of ``parent``; classes are numbered by their least member."""

    parent: JoinSemilattice
    class_of: tuple

    @classmethod
    def from_labels(cls, L: JoinSemilattice, labels) -> "Congruence":
        renumber = {}
        out = []
        for lab in labels:
            out.append(renumber.setdefault(lab, len(renumber)))
        return cls(L, tuple(out))

    @cached_property
    def classes(self) -> tuple:
        out = [0] * (max(self.class_of) + 1)
        for a, c in enumerate(self.class_of):
            out[c] |= 1 << a
        return tuple(out)

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def class_mask(self, a: int) -> int:
        return self.classes[self.class_of[a]]

    def has_class(self, S: int) -> bool:
        return S in self.classes

    def is_equality(self) -> bool:
        return len(self.classes) == self.parent.n

    def refines(self, other: "Congruence") -> bool:
        """True when self ⊆ other as relations."""
        return all(
            len({other.class_of[a] for a in members(c)}) == 1 for c in self.classes
        )

    def compatibility_witness(self) -> Optional[tuple]:
        """First (a, a', b) with a ~ a' but a∨b ≁ a'∨b, else None."""
        L, c = self.parent, self.class_of
        for cls_mask in self.classes:
            ids = list(members(cls_mask))
            for i, a in enumerate(ids):
                for a2 in ids[i + 1:]:
                    for b in L.elements:
                        if c[L.join[a][b]] != c[L.join[a2][b]]:
                            return (a, a2, b)
        return None

    def render(self) -> str:
        return "|".join(
            "{" + ",".join(self.parent.render(m)) + "}" for m in self.classes
        )

    def __str__(self):
        return self.render()


def pierce_congruence(L: JoinSemilattice, Y: int) -> Congruence:
    return Congruence.from_labels(L, [supercomplements(L, Y, a) for a in L.elements])


def r1(L: JoinSemilattice) -> Congruence:
    return pierce_congruence(L, 1 << L.top)


def equality(L: JoinSemilattice) -> Congruence:
    return Congruence(L, tuple(L.elements))


def total(L: JoinSemilattice) -> Congruence:
    return Congruence(L, (0,) * L.n)


@dataclass(frozen=True)
class QuotientResult:
    quotient: JoinSemilattice
    projection: MorphismTable
    class_names: tuple


def quotient(L: JoinSemilattice, R: Congruence) -> QuotientResult:
    witness = R.compatibility_witness()
    if witness is not None:
        raise NotACongruence(witness)
    reps = [next(members(c)) for c in R.classes]
    k = len(reps)
    table = [[R.class_of[L.join[reps[p]][reps[q]]] for q in range(k)] for p in range(k)]
    names = tuple(L.names[r] for r in reps)
    Q = from_join_table(names, table)
    return QuotientResult(Q, MorphismTable(L, Q, R.class_of), names)


def enumerate_congruences(L: JoinSemilattice, guard: int = CONGRUENCE_GUARD) -> list:
    """Every join-compatible partition, in restricted-growth-string order."""
    n = L.n
    if n > guard:
        raise SizeGuard(f"congruence enumeration needs |L| <= {guard}, got {n}")
    j = L.join
    labels = [0] * n
    out = []

    def consistent(i):
        # any violation among already-labelled elements is final
        for a2 in range(i + 1):
            for a in range(a2):
                if labels[a] != labels[a2]:
                    continue
                for b in range(n):
                    x, y = j[a][b], j[a2][b]
                    if x <= i and y <= i and labels[x] != labels[y]:
                        return False
        return True

    def rec(i, blocks):
        if i == n:
            R = Congruence(L, tuple(labels))
            if R.compatibility_witness() is None:
                out.append(R)
            return
        for lab in range(blocks + 1):
            labels[i] = lab
            if consistent(i):
                rec(i + 1, max(blocks, lab + 1))

    rec(0, 0)
    return out


@dataclass(frozen=True)
class ConjunctivityProfile:
    r1_equality: bool
    distinct_supercomplements: bool
    separating_witness: bool
    nonleq_witness: bool
    strict_witness: bool
    principal_meet_of_maximal: bool

    @property
    def verdicts(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    @property
    def consistent(self) -> bool:
        return len(set(self.verdicts)) == 1

    @property
    def overall(self) -> bool:
        return self.verdicts[0]


def conjunctivity_profile(L: JoinSemilattice, check: bool = True) -> ConjunctivityProfile:
    """Evaluate the six equivalent forms of conjunctivity independently."""
    top, j, n = L.top, L.join, L.n
    top_bit = 1 << top
    sc = [supercomplements(L, top_bit, a) for a in L.elements]

    f1 = r1(L).is_equality()
    f2 = all(sc[a] != sc[b] for a in range(n) for b in range(a + 1, n))
    f3 = all(
        any((j[w][a0] == top) != (j[w][a1] == top) for w in range(n))
        for a0 in range(n)
        for a1 in range(a0 + 1, n)
    )

    def has_w(a, b):
        return any(L.leq(a, w) and w != top and j[w][b] == top for w in range(n))

    f4 = all(has_w(a, b) for a in range(n) for b in range(n) if not L.leq(b, a))
    f5 = all(has_w(a, b) for a in range(n) for b in range(n) if L.lt(a, b))
    maxi = maximal_ideals(L)
    f6 = all(
        intersection_of_maximal_above(L, L.down[a], maxi) == L.down[a] for a in range(n)
    )
    prof = ConjunctivityProfile(f1, f2, f3, f4, f5, f6)
    if check and not prof.consistent:
        raise InternalInconsistency(f"conjunctivity formulations disagree: {prof}")
    return prof


def is_conjunctive(L: JoinSemilattice) -> bool:
    return conjunctivity_profile(L).overall


def ideal_supercomplements(L: JoinSemilattice, a: int) -> list:
    """Ideals W with <W ∪ {a}> = L."""
    IL = ideal_lattice(L)
    return [W for W in IL.ideals if generated_ideal(L, W | 1 << a) == L.full]


@dataclass(frozen=True)
class IdealConjunctivityProfile(ConjunctivityProfile):
    pass


def ideal_r1_restricted(L: JoinSemilattice) -> Congruence:
    """R¹(Id L) restricted to the principal ideals, as a partition of L."""
    IL = ideal_lattice(L)
    big = r1(IL.lattice)
    return Congruence.from_labels(L, [big.class_of[IL.embedding[a]] for a in L.elements])


def is_ideally_conjunctive(L: JoinSemilattice, check: bool = True) -> IdealConjunctivityProfile:
    """The six forms of ideal conjunctivity, evaluated on the full Id L."""
    IL = ideal_lattice(L)
    n, full = L.n, L.full
    ideals = IL.ideals

    def vee(W, a):
        return generated_ideal(L, W | 1 << a)

    isc = [frozenset(k for k, W in enumerate(ideals) if vee(W, a) == full) for a in L.elements]
    f1 = ideal_r1_restricted(L).is_equality()
    f2 = all(isc[a] != isc[b] for a in range(n) for b in range(a + 1, n))
    f3 = all(
        any((vee(W, a0) == full) != (vee(W, a1) == full) for W in ideals)
        for a0 in range(n)
        for a1 in range(a0 + 1, n)
    )

    def has_W(a, b):
        return any(W >> a & 1 and W != full and vee(W, b) == full for W in ideals)

    f4 = all(has_W(a, b) for a in range(n) for b in range(n) if not L.leq(b, a))
    f5 = all(has_W(a, b) for a in range(n) for b in range(n) if L.lt(a, b))
    mp = maximal_proper_ideals(L)

    def meet_of_maximal_proper(S):
        out = full
        for m in mp:
            if m & S == S:
                out &= m
        return out

    f6 = all(meet_of_maximal_proper(L.down[a]) == L.down[a] for a in range(n))
    prof = IdealConjunctivityProfile(f1, f2, f3, f4, f5, f6)
    if check and not prof.consistent:
        raise InternalInconsistency(f"ideal conjunctivity formulations disagree: {prof}")
    return prof


def supercomplement_table(L: JoinSemilattice) -> list:
    """Rows (element, (1:element)), top first, then the remaining elements in id order."""
    order = [L.top] + [a for a in L.elements if a != L.top]
    return [(a, supercomplements(L, 1 << L.top, a)) for a in order]

"""Distributive join-semilattices, prime spectra and maximal-vs-prime analysis."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import JoinSemilattice, mask_of
from .errors import (
    GuaranteeViolated,
    InternalInconsistency,
    NotAFilter,
    NotDistributive,
    PreconditionFailed,
    SizeGuard,
)
from .ideals import (
    generated_ideal,
    ideals_of,
    is_filter,
    is_ideal,
    is_prime,
    maximal_ideals,
    prime_ideals,
)
from .pierce import conjunctivity_profile
from .topology import TopSpace, generate_topology

FRAME_LAW_GUARD = 10


@dataclass(frozen=True)
class DistributivityVerdict:
    distributive: bool
    witness: Optional[tuple]

    def __bool__(self):
        return self.distributive


def distributivity_witness(L: JoinSemilattice) -> Optional[tuple]:
    """First (a, b0, b1) in id order with a ≤ b0∨b1 and no a = a0∨a1, a_i ≤ b_i."""
    j, down = L.join, L.down
    # best candidate refinement: a_i = join of everything below both a and b_i
    below = [[L.join_of(down[a] & down[b]) for b in L.elements] for a in L.elements]
    for a in L.elements:
        for b0 in L.elements:
            x0 = below[a][b0]
            for b1 in L.elements:
                if not L.leq(a, j[b0][b1]):
                    continue
                x1 = below[a][b1]
                if x0 is None or x1 is None or j[x0][x1] != a:
                    return (a, b0, b1)
    return None


def is_distributive(L: JoinSemilattice) -> DistributivityVerdict:
    w = distributivity_witness(L)
    return DistributivityVerdict(w is None, w)


@dataclass(frozen=True)
class IdlDistributivity:
    semilattice: bool
    ideal_lattice: bool
    frame_law: bool

    @property
    def agree(self) -> bool:
        return self.semilattice == self.ideal_lattice == self.frame_law


def idl_distributivity_equivalence(
    L: JoinSemilattice, guard: int = FRAME_LAW_GUARD
) -> IdlDistributivity:
    """Distributivity of L, of the lattice of ideals, and the frame law on it, compared.

    The ideal lattice here is the lattice of nonempty ideals. Without a bottom
    two minimal elements have disjoint principal ideals, so the nonempty ideals
    do not form a lattice and both lattice-side conditions are false.
    """
    if L.n > guard:
        raise SizeGuard(f"frame-law check enumerates 2^|L| families; |L| <= {guard}")
    if L.bottom is None:
        out = IdlDistributivity(is_distributive(L).distributive, False, False)
    else:
        ideals = ideals_of(L, include_empty=False)
        least = L.down[L.bottom]

        def big_join(family):
            out = 0
            for J in family:
                out |= J
            return generated_ideal(L, out) if out else least

        ii = all(
            I & big_join((J, K)) == big_join((I & J, I & K))
            for I in ideals
            for J in ideals
            for K in ideals
        )
        frame = True
        for r in range(len(ideals) + 1):
            for fam in combinations(ideals, r):
                joined = big_join(fam)
                for I in ideals:
                    if I & joined != big_join([I & J for J in fam]):
                        frame = False
                        break
                if not frame:
                    break
            if not frame:
                break
        out = IdlDistributivity(is_distributive(L).distributive, ii, frame)
    if not out.agree:
        raise InternalInconsistency(f"ideal-lattice distributivity forms disagree: {out}")
    return out


@dataclass(frozen=True)
class PrimeSpectrum:
    parent: JoinSemilattice
    points: tuple
    spec: tuple
    topology: TopSpace
    ideal_to_open: tuple
    frame_isomorphism: bool
    note: str = "the empty ideal is excluded from the frame isomorphism"


def spec_sets(L: JoinSemilattice, points) -> tuple:
    return tuple(mask_of(k for k, p in enumerate(points) if not p >> a & 1) for a in L.elements)


def prime_spectrum(L: JoinSemilattice, join_guard: int = 12) -> PrimeSpectrum:
    """Spec L with the map J -> {p : J ⊄ p} checked to be a frame isomorphism.

    The empty ideal and ↓0 both map to ∅, so the check ranges over nonempty ideals.
    """
    d = is_distributive(L)
    if not d:
        raise NotDistributive(d.witness)
    points = tuple(prime_ideals(L))
    spec = spec_sets(L, points)
    top = generate_topology(len(points), set(spec))
    ideals = ideals_of(L, include_empty=False)

    def to_open(J):
        return mask_of(k for k, p in enumerate(points) if J & ~p)

    image = tuple(to_open(J) for J in ideals)
    ok = len(set(image)) == len(ideals) and set(image) == set(top.opens)
    if ok:
        pos = {J: k for k, J in enumerate(ideals)}
        for I in ideals:
            for J in ideals:
                if image[pos[I & J]] != image[pos[I]] & image[pos[J]]:
                    ok = False
        if len(ideals) <= join_guard:
            for r in range(1, len(ideals) + 1):
                for fam in combinations(range(len(ideals)), r):
                    acc = 0
                    union = 0
                    for k in fam:
                        acc |= ideals[k]
                        union |= image[k]
                    if image[pos[generated_ideal(L, acc)]] != union:
                        ok = False
        else:
            for I in ideals:
                for J in ideals:
                    if image[pos[generated_ideal(L, I | J)]] != image[pos[I]] | image[pos[J]]:
                        ok = False
        # the empty join lands on the least nonempty ideal, ↓0
        if image[pos[L.down[L.bottom]]] != 0:
            ok = False
    return PrimeSpectrum(L, points, spec, top, image, ok)


def disjoint_max_prime(L: JoinSemilattice, F: int) -> list:
    """Ideals maximal among those disjoint from the proper filter F; each is asserted prime."""
    d = is_distributive(L)
    if not d:
        raise NotDistributive(d.witness)
    if not is_filter(L, F):
        raise NotAFilter(L.render_set(F))
    if F == L.full:
        raise PreconditionFailed("proper filter", "only the empty ideal misses all of L")
    disjoint = [I for I in ideals_of(L) if I & F == 0]
    maximal = [I for I in disjoint if not any(J != I and J & I == I for J in disjoint)]
    for I in maximal:
        if not is_prime(L, I):
            raise GuaranteeViolated(f"{L.render_set(I)} is maximal disjoint but not prime")
    return maximal


def max_not_prime_witness(L: JoinSemilattice) -> Optional[int]:
    """A maximal ideal that is not prime, or None.

    For finite L with a bottom (hence complete), conjunctive and not
    distributive, such an ideal must exist.
    """
    for m in maximal_ideals(L):
        if not is_prime(L, m):
            return m
    if (
        L.bottom is not None
        and conjunctivity_profile(L).overall
        and not is_distributive(L).distributive
    ):
        raise GuaranteeViolated("complete conjunctive non-distributive L with all maximal ideals prime")
    return None


def order_iso_with_compact_ideals(F: JoinSemilattice) -> bool:
    """For finite distributive lattices F (cpt F = F), check I -> ⋁I and f -> ↓f are inverse
    bijections between nonempty ideals and F."""
    ideals = ideals_of(F, include_empty=False)
    for I in ideals:
        f = F.join_of(I)
        if F.down[f] != I:
            return False
    for f in F.elements:
        if F.join_of(F.down[f]) != f or not is_ideal(F, F.down[f]):
            return False
    return len(ideals) == F.n

"""Maximal-ideal spectra, the cover criterion, representation round trips and Q_φ."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import JoinSemilattice, MorphismTable, from_masks, mask_of, members
from .errors import (
    Degenerate,
    NotAMorphism,
    NotUnionClosed,
    PreconditionFailed,
    VerificationFailed,
)
from .ideals import generated_ideal, maximal_ideals
from .pierce import conjunctivity_profile
from .topology import TopSpace, generate_topology, t1_witness


@dataclass(frozen=True)
class MaxSpectrum:
    parent: JoinSemilattice
    points: tuple
    coz: tuple
    topology: TopSpace
    injective: bool

    @property
    def n_points(self) -> int:
        return len(self.points)

    def point_names(self) -> list:
        return [self.parent.render_set(m) for m in self.points]


def cozero_sets(L: JoinSemilattice, points: Sequence[int]) -> tuple:
    """coz a = {m : a ∉ m}, as a bitmask over ``points``."""
    return tuple(
        mask_of(k for k, m in enumerate(points) if not m >> a & 1) for a in L.elements
    )


def spec_max(L: JoinSemilattice) -> MaxSpectrum:
    """Spec_Max L. Non-conjunctive inputs are accepted and reported as non-injective."""
    if L.n < 2:
        raise Degenerate(f"|L| = {L.n}")
    points = tuple(maximal_ideals(L))
    coz = cozero_sets(L, points)
    top = generate_topology(len(points), set(coz))
    return MaxSpectrum(L, points, coz, top, len(set(coz)) == L.n)


@dataclass(frozen=True)
class T1Verdict:
    ok: bool
    witness: Optional[tuple]


def t1_subbase_check(n_points: int, family: Sequence[int]) -> T1Verdict:
    w = t1_witness(n_points, family)
    return T1Verdict(w is None, w)


def hull(L: JoinSemilattice, B: int, maximal=None) -> int:
    """⟨⟨B⟩⟩, the intersection of all maximal ideals containing B."""
    out = L.full
    for m in maximal_ideals(L) if maximal is None else maximal:
        if m & B == B:
            out &= m
    return out


@dataclass(frozen=True)
class HullCover:
    hull: int
    covers: bool
    in_hull: bool
    condition_iii: bool

    @property
    def agree(self) -> bool:
        return self.covers == self.in_hull == self.condition_iii


def hull_and_cover(L: JoinSemilattice, a: int, B: int, maximal=None) -> HullCover:
    """The three equivalent cover conditions for ``a`` against ``B``.

    The equivalence needs ``B`` nonempty: for ``B = ∅`` the supercomplement
    condition is always false while the other two hold whenever ``a`` lies
    in every maximal ideal.
    """
    maxi = maximal_ideals(L) if maximal is None else maximal
    coz = cozero_sets(L, maxi)
    union = 0
    for b in members(B):
        union |= coz[b]
    h = hull(L, B, maxi)
    gen = generated_ideal(L, B)
    top, j = L.top, L.join
    cond3 = all(
        any(j[x][b] == top for b in members(gen))
        for x in L.elements
        if j[x][a] == top
    )
    return HullCover(h, coz[a] & ~union == 0, bool(h >> a & 1), cond3)


@dataclass(frozen=True)
class Roundtrip:
    semilattice: JoinSemilattice
    conjunctive: bool
    point_map: tuple
    spectrum: MaxSpectrum = field(repr=False)


def roundtrip_representation(n_points: int, family: Sequence[int], labels=None) -> Roundtrip:
    """Check that a union-closed T1 subbase on a finite set is recovered by Spec_Max.

    Returns ``point_map[x]`` = index of m_x among the spectrum points.
    """
    if n_points < 1:
        raise PreconditionFailed("nonempty point set")
    full = (1 << n_points) - 1
    family = list(family)
    labels = list(labels) if labels is not None else [f"p{i}" for i in range(n_points)]
    if full not in family:
        raise PreconditionFailed("family contains X")
    try:
        L = from_masks(labels, family)
    except NotUnionClosed as exc:
        raise PreconditionFailed("union-closed", str(exc.witness)) from None
    w = t1_witness(n_points, family)
    if w is not None:
        raise PreconditionFailed(
            "T1 subbase", f"no set contains {labels[w[0]]} and omits {labels[w[1]]}"
        )
    conj = conjunctivity_profile(L).overall
    points = tuple(maximal_ideals(L))
    m_x = [mask_of(a for a, s in enumerate(family) if not s >> x & 1) for x in range(n_points)]
    try:
        point_map = tuple(points.index(m) for m in m_x)
    except ValueError:
        raise VerificationFailed("some m_x is not a maximal ideal") from None
    if len(set(point_map)) != len(points) or len(points) != n_points:
        raise VerificationFailed("x -> m_x is not a bijection onto max L")
    coz = cozero_sets(L, points)
    for a, s in enumerate(family):
        if coz[a] != mask_of(point_map[x] for x in members(s)):
            raise VerificationFailed(f"coz of element {a} is not the image of its set")
    spectrum = MaxSpectrum(L, points, coz, generate_topology(len(points), set(coz)), len(set(coz)) == L.n)
    source = generate_topology(n_points, family)
    image = {mask_of(point_map[x] for x in members(O)) for O in source.opens}
    if image != set(spectrum.topology.opens):
        raise VerificationFailed("x -> m_x does not carry the topology onto Spec_Max")
    return Roundtrip(L, conj, point_map, spectrum)


def _require_morphism(phi: MorphismTable):
    flags = phi.flags
    if not flags.preserves_join:
        raise NotAMorphism(("join", flags.join_witness))
    if not flags.preserves_top:
        raise NotAMorphism(("top", flags.top_witness))


@dataclass(frozen=True)
class ConjunctiveMorphismVerdict:
    conjunctive: bool
    failing: tuple


def is_conjunctive_morphism(phi: MorphismTable) -> ConjunctiveMorphismVerdict:
    """φ⁻¹(w) must be an intersection of maximal ideals for every maximal ideal w of the target."""
    _require_morphism(phi)
    maxL = maximal_ideals(phi.source)
    failing = []
    for w in maximal_ideals(phi.target):
        pre = phi.preimage(w)
        if hull(phi.source, pre, maxL) != pre:
            failing.append(w)
    return ConjunctiveMorphismVerdict(not failing, tuple(failing))


@dataclass(frozen=True)
class StrictInclusion:
    a: int
    b: int
    left: int
    right: int


@dataclass(frozen=True)
class QPhiReport:
    relation: tuple
    join_identity: bool
    coz_identity: bool
    inclusion_holds: bool
    strict: tuple

    def pairs(self) -> list:
        return [(w, v) for w, row in enumerate(self.relation) for v in members(row)]


def q_phi_analysis(phi: MorphismTable) -> QPhiReport:
    """Build Q_φ ⊆ X_M × X_L and test the identities it satisfies.

    ``relation[w]`` is the bitmask of source points ``v`` with φ⁻¹(w) ⊆ v.
    Points are maximal ideals in ``maximal_ideals`` order on each side.
    """
    L, M = phi.source, phi.target
    _require_morphism(phi)
    if not conjunctivity_profile(L).overall or not conjunctivity_profile(M).overall:
        raise PreconditionFailed("both structures conjunctive")
    if not is_conjunctive_morphism(phi).conjunctive:
        raise PreconditionFailed("φ conjunctive")
    XL, XM = maximal_ideals(L), maximal_ideals(M)
    cozL, cozM = cozero_sets(L, XL), cozero_sets(M, XM)
    relation = []
    for w in XM:
        pre = phi.preimage(w)
        relation.append(mask_of(k for k, v in enumerate(XL) if v & pre == pre))
    if any(r == 0 for r in relation):
        raise VerificationFailed("Q_φ is not multi-valued total")

    def q_inverse(V):
        return mask_of(k for k, r in enumerate(relation) if r & V)

    join_ok = True
    for a in L.elements:
        for k, w in enumerate(XM):
            # ⋁{â(v) : (w, v) ∈ Q} against the value of φ(a)^ at w
            composed = max((0 if XL[v] >> a & 1 else 1) for v in members(relation[k]))
            if composed != (0 if w >> phi(a) & 1 else 1):
                join_ok = False
    coz_ok = all(q_inverse(cozL[a]) == cozM[phi(a)] for a in L.elements)
    incl_ok = True
    strict = []
    for a in L.elements:
        for b in range(a + 1, L.n):
            left = q_inverse(cozL[a] & cozL[b])
            right = cozM[phi(a)] & cozM[phi(b)]
            if left & ~right:
                incl_ok = False
            elif left != right:
                strict.append(StrictInclusion(a, b, left, right))
    return QPhiReport(tuple(relation), join_ok, coz_ok, incl_ok, tuple(strict))

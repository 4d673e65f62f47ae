"""The free distributive lattice dL, the lattice wL, the surjection w̄ and base classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .core import (
    JoinSemilattice,
    MorphismTable,
    from_masks,
    mask_of,
    members,
    meet_structure,
)
from .errors import (
    GuaranteeViolated,
    InternalInconsistency,
    NotABase,
    NotATopology,
    NotConjunctive,
    PreconditionFailed,
    SizeGuard,
    VerificationFailed,
)
from .ideals import maximal_ideals
from .pierce import Congruence, conjunctivity_profile, quotient, r1
from .spectrum import cozero_sets
from .topology import (
    TopSpace,
    close_under_union,
    generate_topology,
    is_base_for,
    is_topology,
    t1_witness,
)

DLAT_GUARD = 20_000


def lattice_closure(generators: Sequence[int], guard: int = DLAT_GUARD) -> list:
    """Close a family of bitmasks under binary union and intersection, sorted by mask."""
    seen = set(generators)
    order = list(dict.fromkeys(generators))
    k = 0
    while k < len(order):
        x = order[k]
        for y in order[: k + 1]:
            for z in (x | y, x & y):
                if z not in seen:
                    seen.add(z)
                    order.append(z)
                    if len(order) > guard:
                        raise SizeGuard(f"lattice closure exceeds {guard} elements")
        k += 1
    return sorted(seen)


@dataclass(frozen=True)
class GeneratedLattice:
    """A finite lattice of subsets of a universe, with a generator map from ``ground``."""

    ground: JoinSemilattice
    universe: tuple
    elements: tuple
    generator: tuple
    semilattice: JoinSemilattice = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def index(self, s: int) -> int:
        return self._pos[s]

    @cached_property
    def _pos(self) -> dict:
        return {s: k for k, s in enumerate(self.elements)}

    def meet(self, p: int, q: int) -> int:
        return self._pos[self.elements[p] & self.elements[q]]

    def join(self, p: int, q: int) -> int:
        return self.semilattice.join[p][q]

    def hasse_edges(self) -> list:
        """Cover pairs (lower, upper) by element index."""
        el = self.elements
        n = len(el)
        out = []
        for p in range(n):
            for q in range(n):
                if p == q or el[p] & ~el[q]:
                    continue
                if not any(
                    r not in (p, q) and el[p] & ~el[r] == 0 and el[r] & ~el[q] == 0
                    for r in range(n)
                ):
                    out.append((p, q))
        return out


def _generated(ground, universe, gens, guard) -> GeneratedLattice:
    elements = lattice_closure(list(gens), guard)
    pos = {s: k for k, s in enumerate(elements)}
    sl = from_masks(universe, elements)
    return GeneratedLattice(ground, tuple(universe), tuple(elements), tuple(pos[g] for g in gens), sl)


def generator_sets(L: JoinSemilattice) -> tuple:
    """d_L(b) = {y : b ≰ y}, the complement of ↑b, as masks over L."""
    return tuple(L.full & ~L.up[b] for b in L.elements)


def free_dlat(L: JoinSemilattice, guard: int = DLAT_GUARD) -> GeneratedLattice:
    return _generated(L, L.names, generator_sets(L), guard)


def wl_lattice(L: JoinSemilattice, guard: int = DLAT_GUARD) -> GeneratedLattice:
    """Sublattice of P(Spec_Max L) generated by the cozero sets."""
    if not conjunctivity_profile(L).overall:
        raise NotConjunctive()
    points = maximal_ideals(L)
    names = [L.render_set(m) for m in points]
    return _generated(L, names, cozero_sets(L, points), guard)


@dataclass(frozen=True)
class WBar:
    dl: GeneratedLattice
    wl: GeneratedLattice
    morphism: MorphismTable
    kernel: Congruence

    @property
    def surjective(self) -> bool:
        return len(set(self.morphism.mapping)) == len(self.wl)

    @property
    def injective(self) -> bool:
        return len(set(self.morphism.mapping)) == len(self.dl)


def overline_w(L: JoinSemilattice, guard: int = DLAT_GUARD) -> WBar:
    """Extend d_L(b) -> coz b to dL by closing generator pairs under ∪ and ∩ componentwise."""
    dl = free_dlat(L, guard)
    wl = wl_lattice(L, guard)
    shift = len(wl.universe)
    gens = [
        dl.elements[dl.generator[b]] << shift | wl.elements[wl.generator[b]]
        for b in L.elements
    ]
    low = (1 << shift) - 1
    mapping = {}
    for pair in lattice_closure(gens, guard * 4):
        d, w = pair >> shift, pair & low
        if mapping.setdefault(d, w) != w:
            raise VerificationFailed(f"w̄ is not well defined at {dl.semilattice.render_set(d)}")
    table = tuple(wl.index(mapping[d]) for d in dl.elements)
    phi = MorphismTable(dl.semilattice, wl.semilattice, table)
    return WBar(dl, wl, phi, Congruence.from_labels(dl.semilattice, table))


@dataclass(frozen=True)
class R1Isomorphism:
    dl_size: int
    wl_size: int
    quotient_size: int
    mapping: tuple
    kernel_is_r1: bool
    verdict: bool


def dlat_r1_isomorphism(L: JoinSemilattice, guard: int = DLAT_GUARD) -> R1Isomorphism:
    """Build dL/R¹ and an explicit isomorphism onto wL; check it against ker w̄."""
    wb = overline_w(L, guard)
    dsl = wb.dl.semilattice
    R = r1(dsl)
    kernel_ok = R.class_of == wb.kernel.class_of
    if not kernel_ok:
        for a in dsl.elements:
            for b in dsl.elements:
                if R.same(a, b) != wb.kernel.same(a, b):
                    raise VerificationFailed(
                        f"R¹(dL) and ker w̄ differ at ({dsl.names[a]}, {dsl.names[b]})"
                    )
    Q = quotient(dsl, R)
    reps = [next(members(c)) for c in R.classes]
    iso = tuple(wb.morphism(r) for r in reps)
    if len(set(iso)) != len(reps) or len(reps) != len(wb.wl):
        raise VerificationFailed("dL/R¹ -> wL is not a bijection")
    cls = R.class_of
    for a in dsl.elements:
        for b in dsl.elements:
            if iso[cls[dsl.join[a][b]]] != wb.wl.join(iso[cls[a]], iso[cls[b]]):
                raise VerificationFailed(f"join not preserved at ({dsl.names[a]}, {dsl.names[b]})")
            if iso[cls[wb.dl.meet(a, b)]] != wb.wl.meet(iso[cls[a]], iso[cls[b]]):
                raise VerificationFailed(f"meet not preserved at ({dsl.names[a]}, {dsl.names[b]})")
    return R1Isomorphism(len(wb.dl), len(wb.wl), Q.quotient.n, iso, kernel_ok, kernel_ok)


def lattice_distributive(B: JoinSemilattice) -> bool:
    meet = meet_structure(B).table
    if meet is None:
        return False
    j = B.join
    return all(
        meet[a][j[b][c]] == j[meet[a][b]][meet[a][c]]
        for a in B.elements
        for b in B.elements
        for c in B.elements
    )


@dataclass(frozen=True)
class UniversalVerdict:
    morphisms: int
    extensions: int
    extension: Optional[tuple]

    @property
    def unique(self) -> bool:
        return self.extensions == 1


def lattice_morphisms(S: GeneratedLattice, B: JoinSemilattice, meetB) -> list:
    """All maps S -> B preserving ∨, ∧ and top, by backtracking."""
    n = len(S)
    top = n - 1  # elements are sorted by mask, and the top contains every other
    checks = [[] for _ in range(n)]
    for p in range(n):
        for q in range(p, n):
            jn, mt = S.join(p, q), S.meet(p, q)
            checks[max(p, q, jn)].append((p, q, jn, True))
            checks[max(p, q, mt)].append((p, q, mt, False))
    val = [0] * n
    out = []
    jB = B.join

    def rec(i):
        if i == n:
            out.append(tuple(val))
            return
        choices = [B.top] if i == top else B.elements
        for v in choices:
            val[i] = v
            ok = True
            for p, q, r, is_join in checks[i]:
                want = jB[val[p]][val[q]] if is_join else meetB[val[p]][val[q]]
                if val[r] != want:
                    ok = False
                    break
            if ok:
                rec(i + 1)

    rec(0)
    return out


def universal_property_check(
    L: JoinSemilattice, B: JoinSemilattice, f: MorphismTable, max_target: int = 16
) -> UniversalVerdict:
    """Count the 1-∨-∧ morphisms g: dL -> B with g∘d_L = f; the universal property says exactly one."""
    if f.source is not L and f.source != L:
        raise PreconditionFailed("f has source L")
    if f.target is not B and f.target != B:
        raise PreconditionFailed("f has target B")
    if not f.is_one_join_morphism:
        raise PreconditionFailed("f is a 1-∨-morphism")
    if B.n > max_target:
        raise SizeGuard(f"target has {B.n} elements, guard is {max_target}")
    if not lattice_distributive(B):
        raise PreconditionFailed("B is a distributive lattice")
    dl = free_dlat(L)
    if len(dl) > 64:
        raise SizeGuard(f"|dL| = {len(dl)} exceeds the morphism search guard 64")
    morphisms = lattice_morphisms(dl, B, meet_structure(B).table)
    matching = [g for g in morphisms if all(g[dl.generator[b]] == f(b) for b in L.elements)]
    return UniversalVerdict(len(morphisms), len(matching), matching[0] if len(matching) == 1 else None)


@dataclass(frozen=True)
class BaseClassification:
    space: TopSpace
    base: tuple
    is_base: bool
    annular: bool
    wallman: bool
    conjunctive_base: bool
    t1: bool
    witnesses: dict

    @property
    def wallman_implies_conjunctive(self) -> bool:
        return not self.wallman or self.conjunctive_base


def _wallman_witness(base, full) -> Optional[tuple]:
    for U in base:
        for u in members(U):
            if not any(not V >> u & 1 and U | V == full for V in base):
                return (u, U)
    return None


def _conjunctive_witness(base, full) -> Optional[tuple]:
    for W in base:
        for U in base:
            if W == U or W & ~U:
                continue
            if not any(V | W != full and V | U == full for V in base):
                return (W, U)
    return None


def point_ideals(n_points: int, base: Sequence[int]) -> list:
    """m_u = {V ∈ B : u ∉ V}, as bitmasks over positions in ``base``."""
    return [mask_of(k for k, V in enumerate(base) if not V >> u & 1) for u in range(n_points)]


def classify_base(n_points: int, opens, base) -> BaseClassification:
    opens = frozenset(opens)
    base = tuple(sorted(set(base), key=lambda s: (bin(s).count("1"), s)))
    full = (1 << n_points) - 1
    if not is_topology(n_points, opens):
        raise NotATopology("opens must contain ∅ and X and be closed under ∪ and ∩")
    if not is_base_for(n_points, opens, base):
        raise NotABase("unions of the base do not give exactly the open sets")
    bset = set(base)
    annular = (
        0 in bset
        and full in bset
        and all(s | t in bset and s & t in bset for s in base for t in base)
    )
    witnesses = {}
    wallman = False
    if annular:
        ww = _wallman_witness(base, full)
        wallman = ww is None
        if ww is not None:
            witnesses["wallman"] = ww
        LB = from_masks([f"p{i}" for i in range(n_points)], list(base))
        maxi = maximal_ideals(LB)
        via_ideals = all(m in maxi for m in point_ideals(n_points, base))
        if via_ideals != wallman:
            raise InternalInconsistency("Wallman condition and m_u maximality disagree")
    cw = _conjunctive_witness(base, full)
    if cw is not None:
        witnesses["conjunctive"] = cw
    t1w = t1_witness(n_points, opens)
    if t1w is not None:
        witnesses["t1"] = t1w
    out = BaseClassification(
        TopSpace(n_points, opens), base, True, annular, wallman, cw is None, t1w is None, witnesses
    )
    if not out.wallman_implies_conjunctive:
        raise GuaranteeViolated("a Wallman base failed to be conjunctive")
    return out


@dataclass(frozen=True)
class EtaReport:
    point_map: tuple
    n_spectrum: int
    injective: bool
    continuous: bool
    open_onto_image: bool
    dense: bool

    @property
    def embedding(self) -> bool:
        return self.injective and self.continuous and self.open_onto_image and self.dense

    @property
    def surjective(self) -> bool:
        return len(set(self.point_map)) == self.n_spectrum


def eta_embedding_check(n_points: int, base) -> EtaReport:
    """x -> m_x into Spec_Max B for a Wallman base B of a finite T1 space."""
    base = sorted(set(base), key=lambda s: (bin(s).count("1"), s))
    opens = frozenset(close_under_union(base))
    try:
        cls = classify_base(n_points, opens, base)
    except (NotATopology, NotABase) as exc:
        raise PreconditionFailed("B is a base for a topology", str(exc)) from None
    if not cls.t1:
        raise PreconditionFailed("T1 space")
    if not cls.wallman:
        raise PreconditionFailed("Wallman base")
    base = list(cls.base)
    LB = from_masks([f"p{i}" for i in range(n_points)], base)
    points = maximal_ideals(LB)
    try:
        eta = tuple(points.index(m) for m in point_ideals(n_points, base))
    except ValueError:
        raise VerificationFailed("some m_x is not a maximal ideal") from None
    coz = cozero_sets(LB, points)
    spectrum = generate_topology(len(points), set(coz))
    image = mask_of(eta)

    def pre(V):
        return mask_of(x for x in range(n_points) if eta[x] in members(V))

    continuous = all(pre(V) in opens for V in spectrum.opens)
    open_onto = all(
        any(mask_of(eta[x] for x in members(O)) == (W & image) for W in spectrum.opens)
        for O in opens
    )
    dense = all(W & image for W in spectrum.opens if W)
    return EtaReport(eta, len(points), len(set(eta)) == n_points, continuous, open_onto, dense)

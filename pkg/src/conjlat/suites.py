"""Theorem suites: each runs a family of checks on one structure and returns result rows.

A check that raises is reported as a failed row carrying the error text, so a
suite run never aborts part way.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from .core import (
    JoinSemilattice,
    MorphismTable,
    check_meet_preservation,
    from_join_table,
    meet_structure,
    members,
)
from .corpus import nonfunctoriality_example
from .distributivity import (
    disjoint_max_prime,
    idl_distributivity_equivalence,
    is_distributive,
    max_not_prime_witness,
    order_iso_with_compact_ideals,
    prime_spectrum,
)
from .dlat import (
    classify_base,
    dlat_r1_isomorphism,
    eta_embedding_check,
    free_dlat,
    generator_sets,
    overline_w,
    universal_property_check,
    wl_lattice,
)
from .errors import LatticeError, UnknownSuite
from .ideals import (
    filters,
    generated_ideal,
    is_prime,
    maximal_ideals,
    upsets,
)
from .pierce import (
    conjunctivity_profile,
    enumerate_congruences,
    is_ideally_conjunctive,
    pierce_congruence,
    quotient,
)
from .spectrum import (
    hull,
    hull_and_cover,
    is_conjunctive_morphism,
    q_phi_analysis,
    roundtrip_representation,
    spec_max,
)
from .topology import close_under_union

SUITES = ("pierce", "spectrum", "distributivity", "dlat")


@dataclass(frozen=True)
class CheckRow:
    suite: str
    check: str
    structure: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{mark} {self.suite}/{self.check} [{self.structure}]{tail}"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.check,
            "structure": self.structure,
            "passed": self.passed,
            "detail": self.detail,
        }


class _Runner:
    def __init__(self, suite: str, label: str):
        self.suite = suite
        self.label = label
        self.rows = []

    def check(self, name: str, fn: Callable[[], Optional[str]]):
        """``fn`` returns None on success or a failure description."""
        try:
            failure = fn()
        except LatticeError as exc:
            failure = f"{type(exc).__name__}: {exc}"
        self.rows.append(CheckRow(self.suite, name, self.label, failure is None, failure or ""))

    def skip(self, name: str, reason: str):
        self.rows.append(CheckRow(self.suite, name, self.label, True, f"skipped: {reason}"))


def _nonempty_upsets(L):
    return [U for U in upsets(L) if U]


def pierce_suite(L: JoinSemilattice, label: str = "L", congruence_guard: int = 8) -> list:
    run = _Runner("pierce", label)
    ups = _nonempty_upsets(L)

    def upset_is_class():
        for U in ups:
            if not pierce_congruence(L, U).has_class(U):
                return f"U={L.render_set(U)} is not a class"

    def quotient_conjunctive():
        for U in ups:
            Q = quotient(L, pierce_congruence(L, U)).quotient
            if not conjunctivity_profile(Q).overall:
                return f"L/R^U not conjunctive for U={L.render_set(U)}"

    run.check("upset-is-class", upset_is_class)
    run.check("quotient-by-upset-conjunctive", quotient_conjunctive)

    if L.n <= congruence_guard:
        congruences = enumerate_congruences(L, congruence_guard)

        def strongest():
            for U in ups:
                RU = pierce_congruence(L, U)
                for theta in congruences:
                    if theta.has_class(U) and not theta.refines(RU):
                        return f"{theta.render()} has class {L.render_set(U)} but is not inside R^U"

        def factorization():
            # each congruence with a conjunctive quotient is the Pierce congruence of its top class
            for theta in congruences:
                if not conjunctivity_profile(quotient(L, theta).quotient).overall:
                    continue
                V = theta.class_mask(L.top)
                if pierce_congruence(L, V).class_of != theta.class_of:
                    return f"{theta.render()} differs from R^V"

        run.check("strongest-congruence-with-class", strongest)
        run.check("conjunctive-image-factorization", factorization)
    else:
        run.skip("strongest-congruence-with-class", f"|L| > {congruence_guard}")
        run.skip("conjunctive-image-factorization", f"|L| > {congruence_guard}")

    if L.is_lattice and is_distributive(L).distributive:
        meet = meet_structure(L).table

        def lattice_congruence():
            for F in filters(L):
                R = pierce_congruence(L, F)
                for a in L.elements:
                    for a2 in L.elements:
                        if not R.same(a, a2):
                            continue
                        for b in L.elements:
                            if not R.same(meet[a][b], meet[a2][b]):
                                return f"R^F not meet-compatible, F={L.render_set(F)}"

        run.check("filter-congruence-meet-compatible", lattice_congruence)
    else:
        run.skip("filter-congruence-meet-compatible", "not a distributive lattice")

    if L.n <= 10:
        def arbitrary_joins():
            for c in L.elements:
                R = pierce_congruence(L, L.up[c])
                rep = [next(members(R.class_mask(x))) for x in L.elements]
                for S in range(1, 1 << L.n):
                    moved = 0
                    for x in members(S):
                        moved |= 1 << rep[x]
                    if not R.same(L.join_of(S), L.join_of(moved)):
                        return f"c={L.names[c]}, S={L.render_set(S)}"

        run.check("principal-filter-congruence-subset-joins", arbitrary_joins)
    else:
        run.skip("principal-filter-congruence-subset-joins", "|L| > 10")

    def ideal_conj_iff_conj():
        a, b = is_ideally_conjunctive(L).overall, conjunctivity_profile(L).overall
        if a != b:
            return f"ideally conjunctive={a}, conjunctive={b}"

    run.check("ideally-conjunctive-iff-conjunctive", ideal_conj_iff_conj)
    return run.rows


def _two() -> JoinSemilattice:
    return from_join_table(["0", "1"], [[0, 1], [1, 1]])


def spectrum_suite(L: JoinSemilattice, label: str = "L", cover_guard: int = 8) -> list:
    run = _Runner("spectrum", label)
    conj = conjunctivity_profile(L).overall
    if L.n < 2:
        run.skip("coz-map", "fewer than two elements")
    else:
        def coz_map():
            S = spec_max(L)
            full = (1 << S.n_points) - 1
            if S.coz[L.top] != full:
                return "coz 1 is not every point"
            for a in L.elements:
                for b in L.elements:
                    if S.coz[L.join[a][b]] != S.coz[a] | S.coz[b]:
                        return f"coz does not preserve {L.names[a]} ∨ {L.names[b]}"
            if S.injective != conj:
                return f"coz injective={S.injective} but conjunctive={conj}"
            if conj and not S.topology.is_t1:
                return f"topology not T1, witness {S.topology.t1_witness()}"

        run.check("coz-map", coz_map)

    if L.n <= cover_guard:
        maxi = maximal_ideals(L)

        def cover():
            for B in range(1, 1 << L.n):
                for a in L.elements:
                    r = hull_and_cover(L, a, B, maxi)
                    if not r.agree:
                        return f"a={L.names[a]}, B={L.render_set(B)}: {r}"

        def generated_inside_hull():
            for B in range(1 << L.n):
                g = generated_ideal(L, B)
                if g & ~hull(L, B, maxi):
                    return f"B={L.render_set(B)}"

        run.check("cover-criterion", cover)
        run.check("generated-ideal-inside-hull", generated_inside_hull)
    else:
        run.skip("cover-criterion", f"|L| > {cover_guard}")

    if L.family is not None:
        universe, masks = L.family
        if L.n >= 2 or len(universe) == 1:
            def roundtrip():
                rt = roundtrip_representation(len(universe), masks, universe)
                if not rt.conjunctive:
                    return "family is not conjunctive"

            run.check("representation-roundtrip", roundtrip)

    if conj and L.n >= 2:
        two = _two()

        def morphisms_to_two():
            for m in maximal_ideals(L):
                phi = MorphismTable(L, two, tuple(0 if m >> a & 1 else 1 for a in L.elements))
                if not is_conjunctive_morphism(phi).conjunctive:
                    return f"φ for {L.render_set(m)} is not conjunctive"
                r = q_phi_analysis(phi)
                if not (r.join_identity and r.coz_identity and r.inclusion_holds):
                    return f"Q_φ identity fails for {L.render_set(m)}"

        def identity_q():
            phi = MorphismTable(L, L, tuple(L.elements))
            r = q_phi_analysis(phi)
            if not (r.join_identity and r.coz_identity and r.inclusion_holds) or r.strict:
                return "identity morphism has a strict inclusion or failing identity"

        run.check("q-phi-maximal-characters", morphisms_to_two)
        run.check("q-phi-identity", identity_q)
    return run.rows


def distributivity_suite(L: JoinSemilattice, label: str = "L") -> list:
    run = _Runner("distributivity", label)
    dist = is_distributive(L).distributive
    if L.n <= 10:
        run.check("ideal-lattice-three-way", lambda: None if idl_distributivity_equivalence(L).agree else "disagree")
    if dist:
        def max_are_prime():
            for m in maximal_ideals(L):
                if not is_prime(L, m):
                    return f"{L.render_set(m)} is maximal but not prime"

        def frame_iso():
            if not prime_spectrum(L).frame_isomorphism:
                return "J -> {p : J ⊄ p} is not a frame isomorphism"

        def disjoint_prime():
            for F in filters(L):
                if F != L.full:
                    disjoint_max_prime(L, F)

        if L.n > 1:
            run.check("maximal-ideals-prime", max_are_prime)
        else:
            # the only maximal ideal of a one-element structure is ∅, never prime
            run.skip("maximal-ideals-prime", "one element")
        run.check("prime-spectrum-frame-iso", frame_iso)
        run.check("maximal-disjoint-from-filter-prime", disjoint_prime)
        if L.is_lattice:
            run.check(
                "compact-ideal-order-iso",
                lambda: None if order_iso_with_compact_ideals(L) else "I -> ⋁I fails",
            )
    run.check("maximal-not-prime-guarantee", lambda: (max_not_prime_witness(L), None)[1])
    return run.rows


def dlat_suite(L: JoinSemilattice, label: str = "L", morphism_guard: int = 64) -> list:
    run = _Runner("dlat", label)
    conj = conjunctivity_profile(L).overall

    def generators_join():
        g = generator_sets(L)
        for a in L.elements:
            for b in L.elements:
                if g[a] | g[b] != g[L.join[a][b]]:
                    return f"d({L.names[a]}) ∪ d({L.names[b]}) ≠ d(join)"

    run.check("generator-map-preserves-join", generators_join)
    if conj:
        def w_surjective():
            wb = overline_w(L)
            if not wb.surjective:
                return "w̄ is not surjective"
            if not check_meet_preservation(wb.morphism)[0] or not wb.morphism.is_one_join_morphism:
                return "w̄ is not a lattice morphism"

        run.check("w-bar-surjective-lattice-morphism", w_surjective)
        run.check("w-bar-kernel-is-r1", lambda: None if dlat_r1_isomorphism(L).verdict else "kernel differs")
        if is_distributive(L).distributive and L.is_lattice:
            run.check(
                "distributive-w-is-identity",
                lambda: None if len(wl_lattice(L)) == L.n else "|wL| ≠ |L|",
            )
        if L.n >= 2 and len(free_dlat(L)) <= morphism_guard:
            two = _two()

            def universal():
                for m in maximal_ideals(L):
                    f = MorphismTable(L, two, tuple(0 if m >> a & 1 else 1 for a in L.elements))
                    v = universal_property_check(L, two, f)
                    if not v.unique:
                        return f"{v.extensions} extensions for {L.render_set(m)}"

            run.check("universal-property-to-two", universal)
    if L.family is not None:
        universe, masks = L.family
        k = len(universe)
        full = (1 << k) - 1
        base = set(masks) | {0}
        opens = close_under_union(base)
        if full in base and all(s & t in base for s in base for t in base):
            def base_checks():
                c = classify_base(k, opens, base)
                if not c.wallman_implies_conjunctive:
                    return "Wallman base is not conjunctive"
                if c.t1 and c.annular and not c.wallman:
                    return "annular base of a finite T1 space is not Wallman"
                if c.wallman and c.t1:
                    eta = eta_embedding_check(k, base)
                    if not eta.embedding:
                        return f"x -> m_x is not a dense embedding: {eta}"

            run.check("base-classification", base_checks)
    return run.rows


def fixed_checks() -> list:
    """Checks on fixed examples that do not depend on a corpus structure."""
    run = _Runner("dlat", "fixed")

    def nonfunctorial():
        phi = nonfunctoriality_example()
        flags = phi.flags
        if not (flags.preserves_join and flags.preserves_top):
            return "φ should preserve ∨ and 1"
        ok, witness = check_meet_preservation(phi)
        if ok:
            return "φ unexpectedly preserves ∧"
        src, tgt = phi.source, phi.target
        meet_s, meet_t = meet_structure(src).table, meet_structure(tgt).table
        ab, ac = src.index("ab"), src.index("ac")
        if phi(meet_s[ab][ac]) == meet_t[phi(ab)][phi(ac)]:
            return "φ(ab ∧ ac) = φ(ab) ∧ φ(ac)"

    def sierpinski_not_wallman():
        c = classify_base(2, {0, 1, 3}, {0, 1, 3})
        if c.wallman or not c.annular:
            return f"annular={c.annular}, wallman={c.wallman}"

    def discrete_annular_wallman():
        for k in (1, 2, 3):
            full = (1 << k) - 1
            opens = set(range(full + 1))
            subsets = [s for s in range(full + 1) if s not in (0, full)]
            for r in range(len(subsets) + 1):
                for extra in combinations(subsets, r):
                    base = {0, full, *extra}
                    if not all(s | t in base and s & t in base for s in base for t in base):
                        continue
                    try:
                        c = classify_base(k, opens, base)
                    except LatticeError:
                        continue  # not a base for the discrete topology
                    if not c.wallman:
                        return f"annular base {sorted(base)} on {k} points not Wallman"

    run.check("meet-failure-of-induced-map", nonfunctorial)
    run.check("sierpinski-base-not-wallman", sierpinski_not_wallman)
    run.check("discrete-annular-bases-wallman", discrete_annular_wallman)
    return run.rows


_SUITE_FUNCS = {
    "pierce": pierce_suite,
    "spectrum": spectrum_suite,
    "distributivity": distributivity_suite,
    "dlat": dlat_suite,
}


def run_suite(L: JoinSemilattice, suite: str, label: str = "L") -> list:
    if suite == "all":
        names = SUITES
    elif suite in _SUITE_FUNCS:
        names = (suite,)
    else:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}, all")
    rows = []
    for s in names:
        rows.extend(_SUITE_FUNCS[s](L, label))
    return rows

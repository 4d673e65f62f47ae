"""Exhaustive enumeration of small join-semilattices up to isomorphism, and the conjecture harness."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path
from typing import Callable, Iterable, Optional

from .core import JoinSemilattice, MorphismTable, from_join_table, from_masks, members
from .distributivity import is_distributive
from .errors import SizeGuard, UnknownPredicate
from .ideals import ideals_of, is_prime, maximal_ideals, prime_ideals, upsets
from .io import structure_from_dict, structure_to_dict
from .pierce import conjunctivity_profile, ideal_r1_restricted, is_ideally_conjunctive, pierce_congruence, quotient
from .spectrum import is_conjunctive_morphism, q_phi_analysis

EXHAUSTIVE_GUARD = 7
CONGRUENCE_PREDICATE_GUARD = 6


@dataclass(frozen=True, order=True)
class CanonicalForm:
    size: int
    table: tuple


def _colour_refine(L: JoinSemilattice) -> list:
    n, j = L.n, L.join
    colour = [(bin(L.down[a]).count("1"), bin(L.up[a]).count("1")) for a in range(n)]
    while True:
        sig = [
            (colour[a], tuple(sorted((colour[b], colour[j[a][b]]) for b in range(n))))
            for a in range(n)
        ]
        ranks = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def _relabelled_table(L: JoinSemilattice, perm) -> tuple:
    n = L.n
    inv = [0] * n
    for a, p in enumerate(perm):
        inv[p] = a
    j = L.join
    return tuple(perm[j[inv[x]][inv[y]]] for x in range(n) for y in range(n))


def canonical_labelling(L: JoinSemilattice) -> tuple:
    """(CanonicalForm, perm) with perm[a] the canonical id of element a."""
    colour = _colour_refine(L)
    cells = {}
    for a in range(L.n):
        cells.setdefault(colour[a], []).append(a)
    cell_list = [cells[c] for c in sorted(cells)]
    best = None
    best_perm = None
    for choice in product(*(permutations(c) for c in cell_list)):
        perm = [0] * L.n
        k = 0
        for cell in choice:
            for a in cell:
                perm[a] = k
                k += 1
        t = _relabelled_table(L, perm)
        if best is None or t < best:
            best, best_perm = t, tuple(perm)
    return CanonicalForm(L.n, best), best_perm


def canonical_form(L: JoinSemilattice) -> CanonicalForm:
    return canonical_labelling(L)[0]


def structure_from_canonical(cf: CanonicalForm) -> JoinSemilattice:
    n = cf.size
    table = [list(cf.table[r * n:(r + 1) * n]) for r in range(n)]
    return from_join_table([str(i) for i in range(n)], table)


def _antichains(L: JoinSemilattice) -> Iterable[int]:
    n = L.n
    for A in range(1, 1 << n):
        ids = list(members(A))
        if all(not L.leq(a, b) and not L.leq(b, a) for i, a in enumerate(ids) for b in ids[i + 1:]):
            yield A


def _extend_below(L: JoinSemilattice, antichain: int) -> Optional[list]:
    """Join table of L plus a new minimal element whose strict up-set is ↑antichain."""
    n = L.n
    U = 0
    for a in members(antichain):
        U |= L.up[a]
    row = []
    for x in range(n):
        cand = U & L.up[x]
        least = next((c for c in members(cand) if L.up[c] & cand == cand), None)
        if least is None:
            return None
        row.append(least)
    table = [list(r) + [row[x]] for x, r in enumerate(L.join)]
    table.append(row + [n])
    return table


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple:
    if n == 1:
        return (CanonicalForm(1, (0,)),)
    found = set()
    for cf in _classes(n - 1):
        base = structure_from_canonical(cf)
        for A in _antichains(base):
            table = _extend_below(base, A)
            if table is None:
                continue
            L = from_join_table([str(i) for i in range(n)], table)
            found.add(canonical_form(L))
    return tuple(sorted(found))


def enumerate_semilattices(n: int, guard: int = EXHAUSTIVE_GUARD) -> list:
    """One representative per isomorphism class of n-element join-semilattices, in canonical order."""
    if n < 1:
        return []
    if n > guard:
        raise SizeGuard(f"exhaustive enumeration is limited to n <= {guard}")
    return [structure_from_canonical(cf) for cf in _classes(n)]


def is_isomorphic(A: JoinSemilattice, B: JoinSemilattice) -> bool:
    return A.n == B.n and canonical_form(A) == canonical_form(B)


def sample_semilattices(n: int, count: int, seed: int = 0, points: Optional[int] = None,
                        max_tries: int = 100_000) -> list:
    """Random union-closed families with ``n`` members, one per isomorphism class found."""
    rng = random.Random(seed)
    k = points if points is not None else max(1, n - 1)
    full = (1 << k) - 1
    labels = [f"p{i}" for i in range(k)]
    seen = {}
    tries = 0
    while len(seen) < count and tries < max_tries:
        tries += 1
        family = {rng.randint(0, full)}
        while len(family) < n:
            s = rng.randint(0, full)
            grown = set(family)
            for t in family:
                grown.add(s | t)
            grown.add(s)
            # close under union
            changed = True
            while changed:
                changed = False
                for x in list(grown):
                    for y in list(grown):
                        if x | y not in grown:
                            grown.add(x | y)
                            changed = True
            if len(grown) > n:
                break
            family = grown
        if len(family) != n:
            continue
        L = from_masks(labels, sorted(family))
        cf = canonical_form(L)
        seen.setdefault(cf, L)
    return [seen[cf] for cf in sorted(seen)]


# --- predicates ----------------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    id: str
    description: str
    mode: str  # "witness": report satisfying structures; "counterexample": report violations
    test: Callable
    max_size: Optional[int] = None
    note: str = ""


def _all_max_prime(L):
    return all(is_prime(L, m) for m in maximal_ideals(L))


def _p_max_not_prime_guarantee(L, tally):
    hyp = L.bottom is not None and conjunctivity_profile(L).overall and not is_distributive(L)
    if hyp:
        tally["hypothesis_met"] += 1
    return not hyp or not _all_max_prime(L)


def _p_all_max_prime_nondist(L, tally):
    return conjunctivity_profile(L).overall and not is_distributive(L) and _all_max_prime(L)


def _p_no_primes(L, tally):
    # the one-element structure has no proper nonempty ideals at all
    return L.n > 1 and not prime_ideals(L)


def _p_non_conjunctive(L, tally):
    return not conjunctivity_profile(L).overall


def _p_conj_max_not_prime(L, tally):
    return L.n > 1 and conjunctivity_profile(L).overall and not _all_max_prime(L)


def _p_dist_quotient_nondist(L, tally):
    if not is_distributive(L):
        return False
    hit = False
    for U in upsets(L):
        Q = quotient(L, pierce_congruence(L, U)).quotient
        tally["pairs"] += 1
        if is_distributive(Q):
            tally["pairs_quotient_distributive"] += 1
        else:
            tally["pairs_quotient_nondistributive"] += 1
            hit = True
    return hit


def _p_ideal_conj_quotient(L, tally):
    Q = quotient(L, ideal_r1_restricted(L)).quotient
    return is_ideally_conjunctive(Q).overall


def _p_qphi_strict(L, tally):
    if L.n < 2 or not conjunctivity_profile(L).overall:
        return False
    two = from_join_table(["0", "1"], [[0, 1], [1, 1]])
    hit = False
    for I in ideals_of(L):
        if I == L.full:
            continue
        phi = MorphismTable(L, two, tuple(0 if I >> a & 1 else 1 for a in L.elements))
        if not is_conjunctive_morphism(phi).conjunctive:
            continue
        tally["conjunctive_morphisms"] += 1
        if q_phi_analysis(phi).strict:
            tally["with_strict_inclusion"] += 1
            hit = True
    return hit


PREDICATES = {
    p.id: p
    for p in [
        Predicate(
            "max-not-prime-guarantee",
            "bottomed ∧ conjunctive ∧ ¬distributive ⟹ some maximal ideal is not prime",
            "counterexample",
            _p_max_not_prime_guarantee,
        ),
        Predicate(
            "all-maximal-prime-nondist",
            "conjunctive ∧ ¬distributive ∧ every maximal ideal prime",
            "witness",
            _p_all_max_prime_nondist,
            note="finite bottomless instances are not complete; witnesses here are "
            "candidates for human review, not answers to the general question",
        ),
        Predicate("no-prime-ideals", "no prime ideals", "witness", _p_no_primes),
        Predicate("non-conjunctive", "not conjunctive", "witness", _p_non_conjunctive),
        Predicate(
            "conjunctive-max-not-prime",
            "conjunctive ∧ some maximal ideal not prime",
            "witness",
            _p_conj_max_not_prime,
        ),
        Predicate(
            "distributive-quotient-nondist",
            "distributive L with an up-set U such that L/R^U is not distributive",
            "witness",
            _p_dist_quotient_nondist,
            max_size=CONGRUENCE_PREDICATE_GUARD,
            note="tally counts every (L, U) pair with L distributive",
        ),
        Predicate(
            "ideal-conj-quotient",
            "L/(R¹(Id L)|_L) is ideally conjunctive",
            "counterexample",
            _p_ideal_conj_quotient,
            max_size=CONGRUENCE_PREDICATE_GUARD,
            note="finite structures always have a top, where this reduces to a proven "
            "statement; the top-free setting of the open problem is out of reach, "
            "so a clean census is not evidence about it",
        ),
        Predicate(
            "qphi-strict-to-2",
            "conjunctive L with a conjunctive morphism L -> 2 whose Q_φ shows a strict inclusion",
            "witness",
            _p_qphi_strict,
        ),
    ]
}


def get_predicate(pid: str) -> Predicate:
    try:
        return PREDICATES[pid]
    except KeyError:
        raise UnknownPredicate(f"unknown predicate {pid!r}; known: {', '.join(sorted(PREDICATES))}") from None


@dataclass
class ConjectureReport:
    predicate: str
    description: str
    mode: str
    note: str
    seed: int
    census: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)
    tally: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def total_tested(self) -> int:
        return sum(c["tested"] for c in self.census.values())

    def to_dict(self) -> dict:
        return {
            "schema": "conjlat.conjecture/1",
            "predicate": self.predicate,
            "description": self.description,
            "mode": self.mode,
            "note": self.note,
            "seed": self.seed,
            "census": {str(k): v for k, v in sorted(self.census.items())},
            "sources": {str(k): v for k, v in sorted(self.sources.items())},
            "tally": dict(sorted(self.tally.items())),
            "witnesses": [structure_to_dict(L) for L in self.witnesses],
        }


def _structures_of_size(n, seed, random_samples, exhaustive_guard):
    if n <= exhaustive_guard:
        return enumerate_semilattices(n, exhaustive_guard), "exhaustive"
    return sample_semilattices(n, random_samples, seed=seed + n), "random"


def run_conjectures(predicates, sizes, seed: int = 0, random_samples: int = 50,
                    exhaustive_guard: int = EXHAUSTIVE_GUARD) -> dict:
    """Census of each predicate over the given sizes; returns {predicate id: ConjectureReport}."""
    preds = [get_predicate(p) if isinstance(p, str) else p for p in predicates]
    sizes = sorted(set(sizes))
    for p in preds:
        if p.max_size is not None and sizes and sizes[-1] > p.max_size:
            raise SizeGuard(f"predicate {p.id} is limited to n <= {p.max_size}")
    reports = {p.id: ConjectureReport(p.id, p.description, p.mode, p.note, seed) for p in preds}
    tallies = {p.id: Counter() for p in preds}
    for n in sizes:
        structures, source = _structures_of_size(n, seed, random_samples, exhaustive_guard)
        for p in preds:
            rep = reports[p.id]
            rep.sources[n] = source
            sat = 0
            for L in structures:
                holds = bool(p.test(L, tallies[p.id]))
                sat += holds
                if holds == (p.mode == "witness"):
                    rep.witnesses.append(L)
            rep.census[n] = {"tested": len(structures), "satisfied": sat, "violated": len(structures) - sat}
    for p in preds:
        reports[p.id].tally = dict(tallies[p.id])
    return reports


def is_hit(p: Predicate, L: JoinSemilattice) -> bool:
    return bool(p.test(L, Counter())) == (p.mode == "witness")


def write_report(report: ConjectureReport, out_dir) -> Path:
    """report.json plus one structure document per witness under ``witnesses/``."""
    out = Path(out_dir)
    wdir = out / "witnesses"
    wdir.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(
        json.dumps(report.to_dict(), ensure_ascii=False, indent=2), encoding="utf-8"
    )
    counts = Counter()
    for L in report.witnesses:
        counts[L.n] += 1
        name = f"{report.predicate}-n{L.n}-{counts[L.n]:03d}.json"
        (wdir / name).write_text(
            json.dumps(structure_to_dict(L), ensure_ascii=False), encoding="utf-8"
        )
    return out


def load_witnesses(out_dir) -> list:
    wdir = Path(out_dir) / "witnesses"
    return [
        structure_from_dict(json.loads(p.read_text(encoding="utf-8")))
        for p in sorted(wdir.glob("*.json"))
    ]


def minimal_counterexample(predicate, max_size: int = EXHAUSTIVE_GUARD) -> Optional[JoinSemilattice]:
    """Smallest, then canonically least, structure the predicate reports."""
    p = get_predicate(predicate) if isinstance(predicate, str) else predicate
    limit = max_size if p.max_size is None else min(max_size, p.max_size)
    if max_size > EXHAUSTIVE_GUARD:
        raise SizeGuard(f"minimal search is exhaustive and limited to n <= {EXHAUSTIVE_GUARD}")
    for n in range(1, limit + 1):
        for L in enumerate_semilattices(n):
            if is_hit(p, L):
                return L
    return None

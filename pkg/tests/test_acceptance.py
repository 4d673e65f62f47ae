"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line."""

import json
import time
from itertools import product

import pytest

import oracles
from conjlat.cli import main
from conjlat.core import MorphismTable, check_morphism, from_masks, meet_structure, members
from conjlat.corpus import b2, chain2, free_join, lv, nonfunctoriality_example, p3
from conjlat.distributivity import (
    disjoint_max_prime,
    idl_distributivity_equivalence,
    is_distributive,
    max_not_prime_witness,
    prime_spectrum,
)
from conjlat.dlat import (
    classify_base,
    dlat_r1_isomorphism,
    generator_sets,
    overline_w,
)
from conjlat.errors import NotABase, NotATopology
from conjlat.ideals import filters, maximal_ideals, prime_ideals, upsets
from conjlat.io import structure_from_dict
from conjlat.pierce import (
    conjunctivity_profile,
    enumerate_congruences,
    is_ideally_conjunctive,
    pierce_congruence,
    quotient,
    supercomplement_table,
)
from conjlat.search import canonical_form, enumerate_semilattices
from conjlat.spectrum import (
    hull_and_cover,
    is_conjunctive_morphism,
    q_phi_analysis,
    roundtrip_representation,
    spec_max,
)
from conjlat.topology import close_under_union, t1_witness


def classes(max_n):
    return [L for n in range(1, max_n + 1) for L in enumerate_semilattices(n)]


def gate(capsys, number, title, problems, detail=""):
    ok = not problems
    note = detail if ok else f"{len(problems)} problem(s), first: {problems[0]}"
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} {number:02d} {title}" + (f" [{note}]" if note else ""))
    assert ok, problems[:5]


def to_sets(masks):
    return {oracles.to_set(m) for m in masks}


def test_01_lv_maximal_not_prime(capsys):
    L = lv()
    start = time.perf_counter()
    maxi = maximal_ideals(L)
    primes = prime_ideals(L)
    conj = conjunctivity_profile(L).overall
    dist = is_distributive(L).distributive
    witness = max_not_prime_witness(L)
    elapsed = time.perf_counter() - start
    problems = []
    m = {p: L.mask(["∅", "".join(sorted(set("xyz") - {p}))]) for p in "xyz"}
    if sorted(maxi) != sorted(m.values()):
        problems.append(f"maximal ideals {[L.render(x) for x in maxi]}")
    if to_sets(maxi) != set(oracles.maximal_ideals(L)):
        problems.append("maximal ideals disagree with brute force")
    if primes or oracles.prime_ideals(L):
        problems.append(f"prime ideals {primes}")
    if not conj or not oracles.is_conjunctive(L):
        problems.append("not conjunctive")
    if dist or oracles.is_distributive(L):
        problems.append("distributive")
    if witness not in m.values():
        problems.append(f"witness {witness}")
    if elapsed >= 0.1:
        problems.append(f"runtime {elapsed:.3f}s")
    gate(capsys, 1, "L_V: 3 maximal, 0 prime, conjunctive, not distributive", problems, f"{elapsed * 1000:.1f} ms")


def test_02_lv_supercomplement_table(capsys):
    L = lv()

    def name(x):
        return "1" if x == L.top else L.names[x]

    rows = [(name(a), {name(x) for x in members(s)}) for a, s in supercomplement_table(L)]
    want = {
        "1": {name(x) for x in L.elements},
        "xy": {"1", "xz", "yz"},
        "xz": {"1", "xy", "yz"},
        "yz": {"1", "xy", "xz"},
        "∅": {"1"},
    }
    problems = []
    if dict(rows) != want or len(rows) != len(want):
        problems.append(f"table {rows}")
    if rows[0][0] != "1":
        problems.append("top row is not first")
    for a, got in rows:
        brute = {name(x) for x in oracles.supercomplements(L, {L.top}, L.index("xyz" if a == "1" else a))}
        if brute != got:
            problems.append(f"(1:{a}) brute force {brute}")
    gate(capsys, 2, "supercomplement table of L_V", problems)


def test_03_p3_free_distributive_lattice(capsys):
    L = p3()
    start = time.perf_counter()
    w = overline_w(L)
    iso = dlat_r1_isomorphism(L)
    elapsed = time.perf_counter() - start
    problems = []
    if len(w.dl) != 18:
        problems.append(f"|dL| = {len(w.dl)}")
    if len(w.wl) != 8:
        problems.append(f"|wL| = {len(w.wl)}")
    if not w.surjective or w.injective:
        problems.append(f"surjective={w.surjective} injective={w.injective}")
    if not (iso.verdict and iso.kernel_is_r1 and iso.quotient_size == 8):
        problems.append(f"R1 isomorphism {iso}")
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.3f}s")
    gate(capsys, 3, "P3: |dL|=18, |wL|=8, w̄ onto not 1-1, dL/R¹ ≅ wL", problems, f"{elapsed * 1000:.1f} ms")


def test_04_free_join_generators(capsys):
    L = free_join()
    problems = []
    d = generator_sets(L)
    for b in L.elements:
        want = L.full & ~(1 << L.top) & ~(1 << b)
        if d[b] != want:
            problems.append(f"d({L.names[b]}) = {L.render(d[b])}")
        brute = {y for y in L.elements if not oracles.leq(L, b, y)}
        if oracles.to_set(d[b]) != brute:
            problems.append(f"d({L.names[b]}) brute force")
    if not overline_w(L).injective:
        problems.append("w̄ not injective")
    gate(capsys, 4, "free join: d(b) = L∖{1,b}, w̄ injective", problems)


def test_05_nonfunctoriality(capsys):
    phi = nonfunctoriality_example()
    src, tgt = phi.source, phi.target
    problems = []
    flags = check_morphism(phi)
    if not (flags.preserves_join and flags.preserves_top):
        problems.append(f"flags {flags}")
    kernel = {src.names[x] for x in src.elements if phi(x) == tgt.bottom}
    if kernel != {"∅", "a"}:
        problems.append(f"kernel {kernel}")
    ab, ac = src.index("ab"), src.index("ac")
    ms, mt = meet_structure(src).table, meet_structure(tgt).table
    if phi(ms[ab][ac]) == mt[phi(ab)][phi(ac)]:
        problems.append("meet preserved at (ab, ac)")
    gate(capsys, 5, "P{a,b,c} -> P{d} keeps ∨ and top, breaks ∧ at (ab,ac)", problems)


def test_06_pierce_suite_exhaustive(capsys):
    start = time.perf_counter()
    problems = []
    checked = {"structures": 0, "upsets": 0, "congruences": 0, "filters": 0}
    for L in classes(6):
        checked["structures"] += 1
        congs = enumerate_congruences(L)
        brute = {tuple(sorted(tuple(sorted(b)) for b in part)) for part in oracles.congruences(L)}
        got = {tuple(sorted(tuple(sorted(oracles.to_set(c))) for c in R.classes)) for R in congs}
        if got != brute:
            problems.append(f"congruence enumeration differs on {L.names}")
        checked["congruences"] += len(congs)
        ups = upsets(L)
        if to_sets(ups) != {s for s in oracles.subsets(L) if oracles.is_upset(L, s)}:
            problems.append("up-set enumeration differs")
        for U in ups:
            checked["upsets"] += 1
            R = pierce_congruence(L, U)
            # (i) U is a class; an empty set is never a block of a partition
            if U and not R.has_class(U):
                problems.append(f"(i) U={L.render(U)} not a class")
            # (ii) the quotient is conjunctive
            if not oracles.is_conjunctive(quotient(L, R).quotient):
                problems.append(f"(ii) L/R^U not conjunctive, U={L.render(U)}")
            for theta in congs:
                coarser = R.refines(theta) and theta.class_of != R.class_of
                # (iii) a properly coarser congruence has a strictly larger top class
                if coarser:
                    top_class = theta.class_mask(L.top)
                    if top_class == U or top_class & U != U:
                        problems.append(f"(iii) {theta.render()} over U={L.render(U)}")
                # R^U is the coarsest congruence with U as a class
                if U and theta.has_class(U) and not theta.refines(R):
                    problems.append(f"strongest: {theta.render()} U={L.render(U)}")
        meet = oracles.meet_table(L)
        if meet is not None and oracles.is_distributive(L):
            for F in filters(L):
                checked["filters"] += 1
                R = pierce_congruence(L, F)
                for a, a2, b in product(L.elements, repeat=3):
                    if R.same(a, a2) and not R.same(meet[a][b], meet[a2][b]):
                        problems.append(f"filter congruence not ∧-compatible, F={L.render(F)}")
                        break
        if is_ideally_conjunctive(L).overall != oracles.is_conjunctive(L):
            problems.append(f"ideally conjunctive differs on {L.names}")
    elapsed = time.perf_counter() - start
    if elapsed >= 300:
        problems.append(f"runtime {elapsed:.1f}s")
    detail = ", ".join(f"{k}={v}" for k, v in checked.items()) + f", {elapsed:.1f}s"
    gate(capsys, 6, "Pierce congruence suite, all classes n <= 6", problems, detail)


def _union_closed_families(k):
    full = (1 << k) - 1
    others = [s for s in range(full)]
    for pick in range(1 << len(others)):
        fam = [others[i] for i in range(len(others)) if pick >> i & 1] + [full]
        s = set(fam)
        if all(a | b in s for a in fam for b in fam):
            yield fam


def test_07_representation_suite(capsys):
    start = time.perf_counter()
    problems = []
    families = 0
    for k in range(1, 5):
        for fam in _union_closed_families(k):
            if t1_witness(k, fam) is not None:
                continue
            families += 1
            rt = roundtrip_representation(k, fam)
            L = rt.semilattice
            if not rt.conjunctive or not oracles.is_conjunctive(L):
                problems.append(f"not conjunctive: {fam}")
                continue
            brute_max = set(oracles.maximal_ideals(L))
            m_x = [frozenset(a for a, s in enumerate(fam) if not s >> x & 1) for x in range(k)]
            if set(m_x) != brute_max or len(set(m_x)) != k:
                problems.append(f"x -> m_x not onto max L: {fam}")
                continue
            pts = rt.spectrum.points
            if [oracles.to_set(pts[rt.point_map[x]]) for x in range(k)] != m_x:
                problems.append(f"point map: {fam}")
            # homeomorphism: images of the source opens are exactly the spectrum opens
            cozs = [frozenset(x for x in range(k) if a not in m_x[x]) for a in range(L.n)]
            spec_opens = oracles.generated_topology(k, cozs)
            src_opens = oracles.generated_topology(k, [oracles.to_set(s) for s in fam])
            if spec_opens != src_opens:
                problems.append(f"topologies differ: {fam}")
    conjunctive = 0
    for L in classes(6):
        if L.n < 2 or not conjunctivity_profile(L).overall:
            continue
        conjunctive += 1
        S = spec_max(L)
        if not S.injective or len(set(S.coz)) != L.n:
            problems.append(f"coz not injective on {L.names}")
        if not S.topology.is_t1:
            problems.append(f"not T1 on {L.names}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        problems.append(f"runtime {elapsed:.1f}s")
    gate(
        capsys, 7, "representation round trip and coz injectivity", problems,
        f"{families} families, {conjunctive} conjunctive classes, {elapsed:.1f}s",
    )


def test_08_cover_criterion(capsys):
    problems = []
    empty_cases = []
    pairs = 0
    for L in classes(5):
        maxi = maximal_ideals(L)
        brute_max = oracles.maximal_ideals(L)
        top = oracles.top(L)
        for a in L.elements:
            for B in range(1 << L.n):
                pairs += 1
                bs = oracles.to_set(B)
                covers = all(not bs <= m for m in brute_max if a not in m)
                hull = frozenset(L.elements)
                for m in brute_max:
                    if bs <= m:
                        hull &= m
                in_hull = a in hull
                gen = oracles.generated_ideal(L, bs)
                cond3 = all(
                    any(L.join[x][b] == top for b in gen) for x in L.elements if L.join[x][a] == top
                )
                r = hull_and_cover(L, a, B, maxi)
                if (r.covers, r.in_hull, r.condition_iii) != (covers, in_hull, cond3):
                    problems.append(f"implementation differs from brute force at a={a}, B={B}")
                if covers == in_hull == cond3:
                    continue
                if B:
                    problems.append(f"{L.names}: a={L.names[a]}, B={L.render(B)}")
                else:
                    empty_cases.append((L.names, L.names[a], covers, in_hull, cond3))
    # every B = ∅ disagreement is the same one: a in all maximal ideals, nothing in <∅>
    for names, a, covers, in_hull, cond3 in empty_cases:
        if not (covers and in_hull and not cond3):
            problems.append(f"unexpected B=∅ pattern on {names} at {a}")
    if problems or not empty_cases:
        gate(capsys, 8, "cover criterion on every (a,B) pair", problems, f"{pairs} pairs, n <= 5")
        return
    # the nonempty-B part holds; the literal statement fails only at B = ∅
    with capsys.disabled():
        print(
            f"\nFAIL 08 cover criterion on every (a,B) pair [{pairs} pairs, n <= 5: all nonempty B agree; "
            f"{len(empty_cases)} pairs with B = ∅ satisfy (i) and (ii) but not (iii)]"
        )
    pytest.xfail("the three cover conditions disagree for B = ∅")


def _conjunctive_morphism_brute(phi, maxL, maxM):
    for w in maxM:
        pre = frozenset(a for a in phi.source.elements if phi(a) in w)
        hull = frozenset(phi.source.elements)
        for m in maxL:
            if pre <= m:
                hull &= m
        if hull != pre:
            return False
    return True


def test_09_q_phi_identities(capsys):
    small = [L for L in classes(4) if conjunctivity_profile(L).overall and oracles.is_conjunctive(L)]
    problems = []
    morphisms = 0
    strict_cases = []
    for L in small:
        maxL = oracles.maximal_ideals(L)
        for M in small:
            maxM = oracles.maximal_ideals(M)
            for mapping in product(range(M.n), repeat=L.n):
                phi = MorphismTable(L, M, mapping)
                if not phi.is_one_join_morphism:
                    continue
                brute = _conjunctive_morphism_brute(phi, maxL, maxM)
                if is_conjunctive_morphism(phi).conjunctive != brute:
                    problems.append(f"conjunctive morphism verdict {mapping}")
                if not brute:
                    continue
                morphisms += 1
                r = q_phi_analysis(phi)
                # recompute both identities from the relation, point by point
                XL, XM = maximal_ideals(L), maximal_ideals(M)
                Q = [[v for v in range(len(XL)) if r.relation[w] >> v & 1] for w in range(len(XM))]
                for w, v_list in enumerate(Q):
                    pre = frozenset(a for a in L.elements if XM[w] >> phi(a) & 1)
                    if {v for v in range(len(XL)) if pre <= oracles.to_set(XL[v])} != set(v_list):
                        problems.append(f"Q_φ row {w} for {mapping}")
                for a in L.elements:
                    for w, v_list in enumerate(Q):
                        lhs = max(0 if XL[v] >> a & 1 else 1 for v in v_list)
                        rhs = 0 if XM[w] >> phi(a) & 1 else 1
                        if lhs != rhs:
                            problems.append(f"join identity at a={a}, w={w}, {mapping}")
                    coz_a = {v for v in range(len(XL)) if not XL[v] >> a & 1}
                    q_inv = {w for w, v_list in enumerate(Q) if coz_a & set(v_list)}
                    coz_phi = {w for w in range(len(XM)) if not XM[w] >> phi(a) & 1}
                    if q_inv != coz_phi:
                        problems.append(f"coz identity at a={a}, {mapping}")
                if not (r.join_identity and r.coz_identity and r.inclusion_holds):
                    problems.append(f"report flags for {mapping}")
                if r.strict:
                    strict_cases.append((canonical_form(L), canonical_form(M)))
    b2_to_two = (canonical_form(b2()), canonical_form(chain2()))
    if b2_to_two not in strict_cases:
        problems.append("no strict inclusion for B2 -> 2")
    gate(
        capsys, 9, "Q_φ identities on all conjunctive morphisms, sizes <= 4", problems,
        f"{morphisms} morphisms, {len(strict_cases)} with strict inclusion",
    )


def test_10_distributivity_suite(capsys):
    problems = []
    dist_count = 0
    witnesses = 0
    for L in classes(6):
        r = idl_distributivity_equivalence(L)
        if not r.agree or r.semilattice != oracles.is_distributive(L):
            problems.append(f"three-way disagreement on {L.names}: {r}")
        if not r.semilattice:
            continue
        dist_count += 1
        S = prime_spectrum(L)
        if not S.frame_isomorphism:
            problems.append(f"frame isomorphism fails on {L.names}")
        for F in filters(L):
            if F == L.full:
                continue
            for I in disjoint_max_prime(L, F):
                witnesses += 1
                if not oracles.is_prime(L, oracles.to_set(I)):
                    problems.append(f"{L.render(I)} not prime")
    gate(
        capsys, 10, "ideal-lattice equivalence, prime spectrum, disjoint-from-filter primes", problems,
        f"{dist_count} distributive classes, {witnesses} maximal-disjoint ideals",
    )


def test_11_max_not_prime_guarantee(capsys):
    problems = []
    count = 0
    for L in classes(6):
        if L.bottom is None or not oracles.is_conjunctive(L) or oracles.is_distributive(L):
            continue
        count += 1
        m = max_not_prime_witness(L)
        if m is None:
            problems.append(f"no witness on {L.names}")
            continue
        ms = oracles.to_set(m)
        if ms not in oracles.maximal_ideals(L) or oracles.is_prime(L, ms):
            problems.append(f"bad witness on {L.names}")
    if count == 0:
        problems.append("no instances")
    gate(capsys, 11, "bottomed conjunctive non-distributive: a maximal ideal is not prime", problems, f"{count} classes")


def test_12_search_finds_p3(capsys, tmp_path):
    out = tmp_path / "search"
    start = time.perf_counter()
    code = main(["--json", "search", "--predicate", "all-maximal-prime-nondist", "--max-size", "7", "--out", str(out)])
    elapsed = time.perf_counter() - start
    doc = json.loads(capsys.readouterr().out)
    problems = []
    if code != 0:
        problems.append(f"exit code {code}")
    files = sorted((out / "witnesses").glob("*.json"))
    forms = set()
    for f in files:
        L = structure_from_dict(json.loads(f.read_text(encoding="utf-8")))
        forms.add(canonical_form(L))
        if oracles.is_distributive(L):
            problems.append(f"{f.name} is distributive")
        if not all(oracles.is_prime(L, m) for m in oracles.maximal_ideals(L)):
            problems.append(f"{f.name} has a non-prime maximal ideal")
    if canonical_form(p3()) not in forms:
        problems.append("P3 missing from witnesses")
    if doc["census"]["7"]["tested"] != 222:
        problems.append("n = 7 census incomplete")
    if elapsed >= 600:
        problems.append(f"runtime {elapsed:.1f}s")
    gate(capsys, 12, "search all-maximal-prime-nondist up to 7 contains P3", problems, f"{len(files)} witnesses, {elapsed:.1f}s")


def _wallman_brute(k, base):
    LB = from_masks([f"p{i}" for i in range(k)], list(base))
    brute_max = set(oracles.maximal_ideals(LB))
    return all(
        frozenset(i for i, V in enumerate(LB.family[1]) if not V >> u & 1) in brute_max for u in range(k)
    )


def test_13_base_classification(capsys):
    problems = []
    classified = annular = discrete_annular = 0
    for k in range(1, 4):
        for pick in range(1 << (1 << k)):
            base = [s for s in range(1 << k) if pick >> s & 1]
            opens = close_under_union(base) | {0}
            try:
                c = classify_base(k, opens, base)
            except (NotATopology, NotABase):
                continue
            classified += 1
            if c.wallman and not c.conjunctive_base:
                problems.append(f"Wallman but not conjunctive: k={k}, {base}")
            if c.annular:
                annular += 1
                if c.wallman != _wallman_brute(k, base):
                    problems.append(f"Wallman verdict differs from m_u scan: k={k}, {base}")
                if len(opens) == 1 << k:
                    discrete_annular += 1
                    if not c.wallman:
                        problems.append(f"discrete annular base not Wallman: k={k}, {base}")
            elif c.wallman:
                problems.append(f"non-annular base marked Wallman: {base}")
    if classify_base(2, [0, 1, 3], [0, 1, 3]).wallman:
        problems.append("Sierpiński base detected Wallman")
    c4 = classify_base(4, range(16), range(16))
    if not c4.wallman:
        problems.append("power set of 4 points not Wallman")
    gate(
        capsys, 13, "Wallman implies conjunctive; Sierpiński not Wallman; discrete annular bases Wallman",
        problems, f"{classified} bases, {annular} annular, {discrete_annular} discrete annular",
    )

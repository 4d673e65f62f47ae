import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conjlat.core import (
    MorphismTable,
    Order,
    check_meet_preservation,
    check_morphism,
    from_join_table,
    from_masks,
    from_set_family,
    identity,
    mask_of,
    meet_structure,
    members,
    order_query,
    relabel,
)
from conjlat.corpus import b2, b3, chain2, lv, nonfunctoriality_example, p3
from conjlat.errors import AxiomViolation, NotUnionClosed, RangeError, SizeGuard, SizeMismatch


def test_chain2_top_and_bottom():
    L = from_join_table(["0", "1"], [[0, 1], [1, 1]])
    assert (L.top, L.bottom) == (1, 0)


def test_commutativity_violation():
    with pytest.raises(AxiomViolation) as exc:
        from_join_table(["a", "b"], [[0, 1], [0, 1]])
    assert exc.value.axiom == "commutativity"
    assert exc.value.witness == (0, 1)


def test_idempotence_violation():
    with pytest.raises(AxiomViolation) as exc:
        from_join_table(["a", "b"], [[1, 1], [1, 1]])
    assert exc.value.axiom == "idempotence"


def test_associativity_violation():
    # commutative and idempotent, but (0∨1)∨2 = 2∨2 = 2 while 0∨(1∨2) = 0∨0 = 0
    table = [[0, 2, 0], [2, 1, 0], [0, 0, 2]]
    with pytest.raises(AxiomViolation) as exc:
        from_join_table(["a", "b", "c"], table)
    assert exc.value.axiom == "associativity"


def test_range_and_size_errors():
    with pytest.raises(RangeError):
        from_join_table(["a", "b"], [[0, 2], [2, 1]])
    with pytest.raises(SizeMismatch):
        from_join_table(["a"], [[0, 1], [1, 1]])
    with pytest.raises(SizeGuard):
        from_join_table([str(i) for i in range(3)], [[max(i, j) for j in range(3)] for i in range(3)], size_guard=2)


def test_lv_from_table_and_family():
    L = lv()
    assert L.n == 5
    assert L.names == ("∅", "xy", "xz", "yz", "xyz")
    assert L.names[L.top] == "xyz"
    T = from_join_table(list(L.names), L.table_rows)
    assert T == L


def test_p3_has_no_bottom():
    L = p3()
    assert L.n == 7
    assert L.bottom is None
    assert L.names[L.top] == "abc"


def test_not_union_closed():
    with pytest.raises(NotUnionClosed):
        from_set_family(["x", "y"], [["x"], ["y"]])


def test_family_rendering_roundtrip():
    sets = [[], ["x", "y"], ["x", "z"], ["y", "z"], ["x", "y", "z"]]
    L = from_set_family(["x", "y", "z"], sets)
    universe, masks = L.family
    assert [[universe[i] for i in members(m)] for m in masks] == sets


def test_order_queries():
    L = lv()
    xy, xz, xyz = L.index("xy"), L.index("xz"), L.index("xyz")
    assert order_query(L, xy, xyz) is Order.LEQ
    assert order_query(L, xyz, xy) is Order.GEQ
    assert order_query(L, xy, xz) is Order.INCOMPARABLE
    assert order_query(L, xy, xy) is Order.EQUAL
    with pytest.raises(RangeError):
        order_query(L, 0, 9)


def test_meet_structure_examples():
    B = b2()
    ms = meet_structure(B)
    assert ms.table is not None
    x, y = B.index("x"), B.index("y")
    assert ms.table[x][y] == B.index("∅")
    P = p3()
    assert meet_structure(P).missing == (P.index("a"), P.index("b"))
    assert meet_structure(lv()).table is not None


def test_meet_structure_matches_oracle(small_classes):
    for L in small_classes:
        ms = meet_structure(L)
        ref = oracles.meet_table(L)
        if ref is None:
            assert ms.table is None
        else:
            assert [list(r) for r in ms.table] == ref


def test_identity_morphism_flags():
    f = identity(lv())
    assert f.flags.preserves_join and f.flags.preserves_top


def test_nonfunctoriality_morphism():
    phi = nonfunctoriality_example()
    flags = check_morphism(phi)
    assert flags.preserves_join and flags.preserves_top
    ok, _ = check_meet_preservation(phi)
    assert not ok
    src = phi.source
    ab, ac, a = src.index("ab"), src.index("ac"), src.index("a")
    meet = meet_structure(src).table
    assert meet[ab][ac] == a
    assert (phi(ab), phi(ac), phi(a)) == (1, 1, 0)


def test_morphism_flags_witnesses():
    L = chain2()
    const0 = MorphismTable(L, L, (0, 0))
    flags = check_morphism(const0)
    assert flags.preserves_join and not flags.preserves_top
    B = b2()
    # sends {x} and {y} to ∅ but their join to the top
    bad = MorphismTable(B, B, (0, 0, 0, 3))
    assert not bad.flags.preserves_join


def test_morphism_size_mismatch():
    with pytest.raises(SizeMismatch):
        MorphismTable(chain2(), chain2(), (0,))


def test_relabel_is_isomorphic():
    L = p3()
    perm = [6, 5, 4, 3, 2, 1, 0]
    R = relabel(L, perm)
    assert oracles.isomorphic(L, R)
    assert R.names[perm[L.index("ab")]] == "ab"


def test_structural_invariants(small_classes):
    for L in small_classes:
        for a in L.elements:
            for b in L.elements:
                if L.leq(a, b) and L.leq(b, a):
                    assert a == b
        assert L.join_of(L.full) == L.top


def test_mask_helpers():
    assert mask_of([0, 2]) == 5
    assert list(members(5)) == [0, 2]


@st.composite
def union_closed(draw):
    k = draw(st.integers(1, 4))
    seeds = draw(st.lists(st.integers(0, (1 << k) - 1), min_size=1, max_size=5))
    fam = set(seeds)
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                if a | b not in fam:
                    fam.add(a | b)
                    changed = True
    return k, sorted(fam)


@settings(max_examples=60, deadline=None)
@given(union_closed())
def test_union_closed_families_are_semilattices(data):
    k, fam = data
    L = from_masks([f"p{i}" for i in range(k)], fam)
    for a in L.elements:
        for b in L.elements:
            assert fam[L.join[a][b]] == fam[a] | fam[b]
            assert L.leq(a, b) == (fam[a] & ~fam[b] == 0)


@settings(max_examples=40, deadline=None)
@given(union_closed(), st.randoms(use_true_random=False))
def test_join_preservation_flag_is_exhaustive(data, rnd):
    k, fam = data
    L = from_masks([f"p{i}" for i in range(k)], fam)
    T = b3()
    mapping = tuple(rnd.randrange(T.n) for _ in L.elements)
    f = MorphismTable(L, T, mapping)
    expect = all(
        mapping[L.join[a][b]] == T.join[mapping[a]][mapping[b]] for a in L.elements for b in L.elements
    )
    assert f.flags.preserves_join == expect

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elmendorf2 import grp
from elmendorf2.classical import (
    atomic_sheaf_check,
    classical_orbit_category,
    classical_phi,
    classical_psi,
    coset_coequalizer_check,
    coset_space,
    counit_map,
    enumerate_gsets,
    equivariant_maps,
    is_gset_isomorphism,
    right_ore_check,
    terminal_presheaf,
    unit_is_iso,
    validate_gset,
    validate_presheaf1,
    verify_classical_equivalence,
)
from elmendorf2.errors import AxiomViolation

from oracles import brute_subgroups


def orbit_count(X):
    seen, n = set(), 0
    for x in X.elements():
        if x not in seen:
            n += 1
            seen |= {X.act[x][g] for g in X.group.elements()}
    return n


@pytest.mark.parametrize("n,sizes", [(2, [1, 2, 4]), (3, [1, 1, 3]), (4, [1, 2, 4])])
def test_gset_enumeration_counts(n, sizes):
    # labelled actions of Z/n on k points = homomorphisms Z/n -> S_k = elements of order dividing n
    G = grp.cyclic_group(n)
    for k, expected in zip((1, 2, 3), sizes):
        perms = [p for p in itertools.permutations(range(k))]

        def order(p):
            q, m = p, 1
            while q != tuple(range(k)):
                q = tuple(p[i] for i in q)
                m += 1
            return m

        assert len(enumerate_gsets(G, k)) == sum(1 for p in perms if n % order(p) == 0) == expected


@pytest.mark.parametrize("G", [grp.cyclic_group(4), grp.symmetric_group(3)])
def test_orbit_category_and_coequalizer(G):
    O = classical_orbit_category(G, identify=True)
    assert {U.member_set for U in O.subgroups} == brute_subgroups(G)
    assert right_ore_check(O)[0]
    for U in O.subgroups:
        assert coset_coequalizer_check(G, U)
        # identified homs are equivariant maps between coset spaces
        for V in O.subgroups:
            u, v = O.subgroups.index(U), O.subgroups.index(V)
            assert len(O.hom(u, v)) == len(equivariant_maps(coset_space(G, U), coset_space(G, V)))


def test_raw_orbit_category_keeps_elements():
    G = grp.cyclic_group(3)
    O = classical_orbit_category(G)
    # from G/e to G/G every element is an arrow
    assert len(O.hom(0, 1)) == 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_verify_classical_equivalence_small_gsets(n):
    G = grp.cyclic_group(n)
    gsets = [X for k in (1, 2, 3) for X in enumerate_gsets(G, k)]
    R = verify_classical_equivalence(G, gsets)
    assert R.passed, [c.check for c in R.failures()]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 3), st.data())
def test_germ_classes_are_elements(n, k, data):
    G = grp.cyclic_group(n)
    X = data.draw(st.sampled_from(enumerate_gsets(G, k)))
    O = classical_orbit_category(G, identify=True)
    F, fixed = classical_phi(X, O)
    assert list(F.sizes) == [len(X.fixed_points(U)) for U in O.subgroups]
    germs = classical_psi(F, O)
    assert len(germs.classes) == X.size
    assert orbit_count(germs.gset) == orbit_count(X)
    assert is_gset_isomorphism(germs.gset, X, counit_map(X, O))


def z2_presheaves(max_size=3):
    O = classical_orbit_category(grp.cyclic_group(2), identify=True)
    C = O.category
    out = []
    for a, b in itertools.product(range(1, max_size + 1), range(0, max_size + 1)):
        sizes = [a, b]
        choices = [list(itertools.product(range(sizes[C.dom[f]]), repeat=sizes[C.cod[f]])) for f in C.arrows()]
        for maps in itertools.product(*choices):
            try:
                out.append(validate_presheaf1(C, sizes, maps))
            except AxiomViolation:
                pass
    return O, out


def test_sheaves_on_z2_are_exactly_the_fixed_point_presheaves():
    O, presheaves = z2_presheaves()
    C = O.category
    swap = C.arr_index((0, 0, 1))
    incl = C.arr_index((0, 1, 0))
    n_sheaves = 0
    for F in presheaves:
        fixed = {x for x in range(F.sizes[0]) if F.maps[swap][x] == x}
        image = F.maps[incl]
        oracle = len(set(image)) == len(image) and set(image) == fixed
        sheaf, _ = atomic_sheaf_check(F)
        assert sheaf == oracle
        assert unit_is_iso(F, O)[0] == sheaf
        n_sheaves += sheaf
    # a labelled Z/2-set on F(G/e) with a labelling of its fixed points:
    # size 1: 1; size 2: 2! + 1; size 3: 3! + 3 transpositions
    assert n_sheaves == 1 + 3 + 9


def test_terminal_presheaf_is_sheaf_and_nonsheaf_fails_unit():
    O = classical_orbit_category(grp.cyclic_group(2), identify=True)
    assert atomic_sheaf_check(terminal_presheaf(O))[0]
    C = O.category
    # two global points over one underlying point
    maps = [None] * C.n_arrows
    for f in C.arrows():
        u, v, _ = C.arr_labels[f]
        maps[f] = {(0, 0): (0,), (0, 1): (0, 0), (1, 1): (0, 1)}[(u, v)]
    F = validate_presheaf1(C, [1, 2], maps)
    ok, w = atomic_sheaf_check(F)
    assert not ok and len(w["preimages"]) == 2
    ok, w = unit_is_iso(F, O)
    assert not ok and w["property"] == "injective"


def test_validate_gset_rejects_non_action():
    with pytest.raises(AxiomViolation):
        validate_gset(grp.cyclic_group(3), [[0, 1, 1], [1, 0, 0]])

import itertools

import pytest

from elmendorf2 import grp
from elmendorf2.action import bg_hom
from elmendorf2.classical import classical_orbit_category
from elmendorf2.errors import InvalidMorphism
from elmendorf2.fixtures import two_groups
from elmendorf2.orbit import (
    build_orbit_2cat,
    coset_category,
    is_orbit_2cell,
    realization_two_functor,
    realize_orbit_2cell,
    right_ore_check,
)
from elmendorf2.twogroup import discrete_two_group

FIXTURES = two_groups()


def brute_orbit_elements(G, U, V):
    """``A`` with ``A U0 A^-1 ⊆ V0`` and ``i(A) U1 i(A)^-1 ⊆ V1``, straight from the tables."""
    out = []
    for A in G.G0.elements():
        iA = G.i(A)
        ok0 = all(G.G0.prod(A, u, G.G0.inv(A)) in V.U0 for u in U.U0)
        ok1 = all(G.G1.prod(iA, g, G.G1.inv(iA)) in V.U1 for g in U.U1)
        if ok0 and ok1:
            out.append(A)
    return out


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_raw_hom_objects_match_brute_force(name):
    G = FIXTURES[name]
    S = build_orbit_2cat(G)
    for u, v in itertools.product(S.objects(), repeat=2):
        assert S.hom_objects[(u, v)] == brute_orbit_elements(G, S.subs[u], S.subs[v])


def test_d2_hom_sizes():
    S = build_orbit_2cat(FIXTURES["D2"])
    sizes = {k: (h.n_objects, h.n_arrows) for k, h in S.two_cat.hom.items()}
    assert sizes == {(0, 0): (2, 2), (0, 1): (2, 2), (1, 0): (0, 0), (1, 1): (2, 2)}
    Si = build_orbit_2cat(FIXTURES["D2"], identify=True)
    sizes = {k: (h.n_objects, h.n_arrows) for k, h in Si.two_cat.hom.items()}
    assert sizes == {(0, 0): (2, 2), (0, 1): (1, 1), (1, 0): (0, 0), (1, 1): (1, 1)}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_identified_hom_counts_equivariant_functors(name):
    G = FIXTURES[name]
    S = build_orbit_2cat(G, identify=True)
    for u, v in itertools.product(S.objects(), repeat=2):
        realized = {S.realize(u, v, f).key() for f in S.hom(u, v).objects()}
        assert len(realized) == S.hom(u, v).n_objects
        H = bg_hom(S.cosets[u].action, S.cosets[v].action)
        assert realized <= {F.key() for F in H.maps}


@pytest.mark.parametrize("name", sorted(FIXTURES))
@pytest.mark.parametrize("identify", [False, True])
def test_right_ore_and_realization(name, identify):
    S = build_orbit_2cat(FIXTURES[name], identify=identify)
    ok, witnesses = right_ore_check(S)
    assert ok and all(w is not None for w in witnesses.values())
    F, BG, _ = realization_two_functor(S)
    assert BG.n_objects == S.n_objects


def test_coset_category_of_trivial_sub_is_regular():
    G = FIXTURES["XM"]
    S = build_orbit_2cat(G)
    C = coset_category(G, S.subs[0])
    assert (C.space.n_objects, C.space.n_arrows) == (G.G0.order, G.G1.order)
    top = coset_category(G, S.subs[-1])
    assert (top.space.n_objects, top.space.n_arrows) == (1, 1)


def test_invalid_two_cell_rejected():
    G = FIXTURES["XM"]
    S = build_orbit_2cat(G)
    top = S.n_objects - 1
    # the arrow (1, 0): 0 -> 1 is not a 2-cell of hom(G/W, G/1) for W the whole 2-group
    assert not is_orbit_2cell(S, 2, 0, 1, top, 0)
    with pytest.raises(InvalidMorphism):
        realize_orbit_2cell(S, top, 0, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_discrete_orbit_matches_classical(n):
    Zn = grp.cyclic_group(n)
    S = build_orbit_2cat(discrete_two_group(Zn), identify=True)
    O = classical_orbit_category(Zn, identify=True)
    assert [U.U0.members for U in S.subs] == [U.members for U in O.subgroups]
    for u, v in itertools.product(S.objects(), repeat=2):
        assert S.hom(u, v).n_objects == len(O.hom(u, v))
        # discrete: every 2-cell is an identity
        assert S.hom(u, v).n_arrows == S.hom(u, v).n_objects

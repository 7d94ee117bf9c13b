import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elmendorf2 import grp
from elmendorf2.errors import CrossedModuleViolation, InterchangeViolation, NotASubTwoGroup
from elmendorf2.fixtures import s3_candidate, two_groups, workspace
from elmendorf2.twogroup import (
    closed_form_composite,
    comp_inverse,
    conjugate_sub_two_group,
    crossed_module_isomorphisms,
    discrete_two_group,
    enumerate_sub_two_groups,
    from_crossed_module,
    identity_crossed_module,
    intersect_sub_two_groups,
    make_sub_two_group,
    one_object_two_group,
    round_trip_isomorphism,
    sub_two_group_poset,
    to_crossed_module,
    trivial_sub,
    validate_crossed_module,
    validate_two_group,
    whole,
)

from oracles import brute_sub_two_groups


def projection_module(n: int, m: int):
    """``Z/n -> Z/m`` reduction with trivial action (``m`` divides ``n``)."""
    G, H = grp.cyclic_group(m), grp.cyclic_group(n)
    return validate_crossed_module(G, H, [h % m for h in H.elements()], [list(H.elements())] * m)


def small_two_groups():
    out = [discrete_two_group(grp.cyclic_group(n)) for n in (1, 2, 3, 4)]
    out += [one_object_two_group(grp.cyclic_group(n)) for n in (2, 3, 4)]
    out += [from_crossed_module(identity_crossed_module(grp.cyclic_group(n))) for n in (2, 3)]
    out += [from_crossed_module(projection_module(4, 2)), discrete_two_group(grp.symmetric_group(3))]
    return out


two_group_st = st.sampled_from(small_two_groups() + list(two_groups().values()))


def test_fixture_two_groups_validate():
    tgs = two_groups()
    assert set(tgs) == {"T", "D2", "D3", "ONE2", "XM"}
    orders = {k: (G.G0.order, G.G1.order) for k, G in tgs.items()}
    assert orders == {"T": (1, 1), "D2": (2, 2), "D3": (3, 3), "ONE2": (1, 2), "XM": (2, 4)}


def test_s3_candidate_fails_interchange_with_real_witness():
    W = s3_candidate()
    with pytest.raises(InterchangeViolation) as info:
        W.twogroup("ONE_S3")
    g, h, k, l = info.value.witness
    S3 = grp.symmetric_group(3)
    # one object: composition is the group law, so interchange reads (gh)(kl) == (gk)(hl)
    assert S3.prod(S3.mul(g, h), S3.mul(k, l)) != S3.prod(S3.mul(g, k), S3.mul(h, l))


def test_eckmann_hilton_one_object_needs_abelian():
    for n in (2, 3, 4):
        one_object_two_group(grp.cyclic_group(n))
    with pytest.raises(InterchangeViolation):
        one_object_two_group(grp.symmetric_group(3))


def test_validate_two_group_rejects_wrong_identity_endpoints():
    Z2 = grp.cyclic_group(2)
    with pytest.raises(Exception):
        validate_two_group(Z2, Z2, [0, 1], [0, 1], [0, 0], {(0, 0): 0, (1, 1): 1})


@pytest.mark.parametrize("name,count", [("T", 1), ("D2", 2), ("D3", 2), ("ONE2", 2), ("XM", 3)])
def test_sub_two_group_counts_match_brute_force(name, count):
    G = two_groups()[name]
    subs = enumerate_sub_two_groups(G)
    assert len(subs) == count
    assert {(U.U0.member_set, U.U1.member_set) for U in subs} == brute_sub_two_groups(G)
    assert subs[0] == trivial_sub(G) and subs[-1] == whole(G)


@settings(max_examples=30, deadline=None)
@given(two_group_st)
def test_sub_two_groups_agree_with_oracle(G):
    subs = enumerate_sub_two_groups(G)
    assert len({U.key() for U in subs}) == len(subs)
    assert {(U.U0.member_set, U.U1.member_set) for U in subs} == brute_sub_two_groups(G)


@settings(max_examples=30, deadline=None)
@given(two_group_st)
def test_composition_has_closed_form_and_inverses(G):
    for (g, f), h in G.comp.items():
        assert closed_form_composite(G, g, f) == h
    for g in G.G1.elements():
        gi = comp_inverse(G, g)
        assert G.comp[(gi, g)] == G.i(G.d0(g))
        assert G.comp[(g, gi)] == G.i(G.d1(g))


@settings(max_examples=30, deadline=None)
@given(two_group_st, st.data())
def test_conjugation_and_intersection_stay_inside_lattice(G, data):
    subs = enumerate_sub_two_groups(G)
    keys = {U.key() for U in subs}
    U = data.draw(st.sampled_from(subs))
    V = data.draw(st.sampled_from(subs))
    A = data.draw(st.sampled_from(list(G.G0.elements())))
    C = conjugate_sub_two_group(U, A)
    assert C.key() in keys and len(C.U0) == len(U.U0) and len(C.U1) == len(U.U1)
    assert conjugate_sub_two_group(C, G.G0.inv(A)) == U
    M = intersect_sub_two_groups(U, V)
    assert M.key() in keys and M <= U and M <= V


def test_poset_meet_and_category():
    G = two_groups()["XM"]
    P = sub_two_group_poset(G)
    C = P.as_category()
    n = len(P)
    assert C.n_objects == n
    assert C.n_arrows == sum(P.leq(a, b) for a, b in itertools.product(range(n), repeat=2))
    for a, b in itertools.product(range(n), repeat=2):
        m = P.meet(a, b)
        assert P.leq(m, a) and P.leq(m, b)


def test_make_sub_two_group_rejects_missing_identity_and_endpoints():
    G = two_groups()["XM"]
    with pytest.raises(NotASubTwoGroup):
        make_sub_two_group(G, [0, 1], [0])
    # arrow 1 = (0, 1) is the identity of object 1; arrow 2 = (1, 0) runs 0 -> 1
    with pytest.raises(NotASubTwoGroup):
        make_sub_two_group(G, [0], [0, 2])


def test_crossed_module_axioms_enforced():
    Z2 = grp.cyclic_group(2)
    S3 = grp.symmetric_group(3)
    with pytest.raises(CrossedModuleViolation):
        # the identity fails to act trivially
        validate_crossed_module(Z2, Z2, [0, 1], [[1, 0], [0, 1]])
    with pytest.raises(CrossedModuleViolation):
        # Peiffer: boundary trivial, action trivial, but the fiber is nonabelian
        validate_crossed_module(grp.trivial_group(), S3, [0] * 6, [list(S3.elements())])


def test_crossed_module_fixture_round_trip():
    W = workspace("xm")
    xm = W.crossed_module("idZ2")
    back = to_crossed_module(from_crossed_module(xm))
    assert any(True for _ in crossed_module_isomorphisms(xm, back))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(1, 1), (2, 1), (2, 2), (4, 2), (4, 4), (6, 3), (6, 2)]))
def test_crossed_module_round_trip_hypothesis(nm):
    xm = projection_module(*nm)
    back = to_crossed_module(from_crossed_module(xm))
    assert any(True for _ in crossed_module_isomorphisms(xm, back))


@settings(max_examples=30, deadline=None)
@given(two_group_st)
def test_two_group_round_trip_is_explicit_iso(G):
    phi0, phi1 = round_trip_isomorphism(G)
    assert sorted(phi1) == list(G.G1.elements())


def test_identity_crossed_module_on_s3():
    S3 = grp.symmetric_group(3)
    G = from_crossed_module(identity_crossed_module(S3))
    assert (G.G0.order, G.G1.order) == (6, 36)
    # every object is isomorphic to every other, so d1 restricted to ker d0 is onto
    assert {G.d1(g) for g in G.d0.kernel()} == set(S3.elements())

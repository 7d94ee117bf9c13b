import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elmendorf2 import grp
from elmendorf2.action import (
    EquivMap,
    bg_hom,
    bg_two_category,
    compatibility_defect,
    diagrammatic_compatibility,
    discrete_action,
    fixed_point_data,
    fixed_points_functor,
    is_equivariant,
    regular_action,
    stabilizer_arrow,
    stabilizer_arrow_pullback,
    stabilizer_object,
    stabilizer_object_pullback,
    trivial_action,
    validate_action,
    validate_action_2cell,
)
from elmendorf2.catkit import NatTrans, identity_functor, make_category, validate_functor, walking_arrow
from elmendorf2.errors import AssociativityViolation, NotASubTwoGroup, NotCompatible, NotEquivariant, NotFunctorial
from elmendorf2.fixtures import BUNDLED, actions, two_groups
from elmendorf2.twogroup import discrete_two_group, enumerate_sub_two_groups, one_object_two_group

from oracles import brute_functors, brute_nat_trans

ALL_ACTIONS = [(doc, name, X) for doc in BUNDLED for name, X in actions(doc)]
action_st = st.sampled_from([X for _, _, X in ALL_ACTIONS])


def two_loops():
    """Two objects, each with a Z/2 of endomorphisms: arrows id0, id1, e0, e1."""
    return make_category(2, [(0, 0), (1, 1)], {(2, 2): 0, (3, 3): 1})


def swap_two_loops():
    D2 = discrete_two_group(grp.cyclic_group(2))
    return validate_action(D2, two_loops(), [[0, 1], [1, 0]], [[0, 1], [1, 0], [2, 3], [3, 2]])


def test_fixture_actions_load():
    names = {(doc, name) for doc, name, _ in ALL_ACTIONS}
    assert ("d2", "swap3") in names and ("xm", "coset2") in names
    assert len(ALL_ACTIONS) == 2 + 6 + 4 + 5 + 5


def test_regular_and_trivial_actions():
    for G in two_groups().values():
        R = regular_action(G)
        assert R.space.n_objects == G.G0.order
        T = trivial_action(G, walking_arrow())
        assert all(len(set(row)) == 1 for row in T.obj_act)


def test_action_axioms_enforced():
    D2 = discrete_two_group(grp.cyclic_group(2))
    with pytest.raises(NotFunctorial):
        validate_action(D2, two_loops(), [[0, 1], [1, 0]], [[0, 1], [1, 0], [2, 2], [3, 3]])
    Z3 = discrete_two_group(grp.cyclic_group(3))
    # a 2-cycle cannot carry an order-3 generator associatively
    with pytest.raises(AssociativityViolation):
        discrete_action(Z3, [[0, 1, 1], [1, 0, 0]])


def test_incompatible_transformation_rejected():
    X = swap_two_loops()
    one = EquivMap(X, X, identity_functor(X.space))
    bad = NatTrans(one.functor, one.functor, (2, 1))
    assert compatibility_defect(bad, X, X) == (0, 1)
    assert not diagrammatic_compatibility(bad, X, X)
    with pytest.raises(NotCompatible):
        validate_action_2cell(bad, one, one)
    good = NatTrans(one.functor, one.functor, (2, 3))
    assert diagrammatic_compatibility(good, X, X)
    validate_action_2cell(good, one, one)


def test_equivariance_check():
    X = swap_two_loops()
    F = validate_functor(X.space, X.space, (0, 0), (0, 0, 2, 2))
    with pytest.raises(NotEquivariant):
        is_equivariant(F, X, X)


@settings(max_examples=40, deadline=None)
@given(action_st)
def test_pointwise_and_diagrammatic_compatibility_agree(X):
    H = bg_hom(X, X)
    for F in H.maps:
        for K in H.maps:
            for t in brute_nat_trans(F, K):
                theta = NatTrans(F, K, t)
                assert (compatibility_defect(theta, X, X) is None) == diagrammatic_compatibility(theta, X, X)


@settings(max_examples=40, deadline=None)
@given(action_st, action_st)
def test_bg_hom_matches_brute_force(X, Y):
    if X.group != Y.group:
        return
    H = bg_hom(X, Y)
    eq = [
        f for f in brute_functors(X.space, Y.space)
        if all(f[0][X.obj_act[x][A]] == Y.obj_act[f[0][x]][A] for x in X.space.objects() for A in X.group.G0.elements())
        and all(f[1][X.arr_act[m][g]] == Y.arr_act[f[1][m]][g] for m in X.space.arrows() for g in X.group.G1.elements())
    ]
    assert {F.key() for F in H.maps} == set(eq)
    n_cells = 0
    for F in H.maps:
        for K in H.maps:
            n_cells += sum(
                1 for t in brute_nat_trans(F, K) if compatibility_defect(NatTrans(F, K, t), X, Y) is None
            )
    assert len(H.cells) == n_cells


def test_bg_two_category_validates():
    G = two_groups()["D2"]
    T, homs = bg_two_category([regular_action(G), trivial_action(G, walking_arrow())])
    assert T.n_objects == 2
    # no equivariant functor from the trivial action into the free one
    assert homs[(1, 0)].category.n_objects == 0


@settings(max_examples=40, deadline=None)
@given(action_st)
def test_stabilizer_of_object_is_stabilizer_of_its_identity(X):
    for x in X.space.objects():
        S = stabilizer_object(X, x)
        assert S == stabilizer_arrow(X, X.space.identity[x])
        assert S == stabilizer_object_pullback(X, x)


@settings(max_examples=40, deadline=None)
@given(action_st)
def test_arrow_stabilizers_direct_vs_pullback_on_fixtures(X):
    for m in X.space.arrows():
        try:
            direct = stabilizer_arrow(X, m)
        except NotASubTwoGroup:
            continue
        pulled = stabilizer_arrow_pullback(X, m)
        assert pulled <= direct


def test_arrow_stabilizer_direct_and_pullback_can_differ():
    # monoid {1, s, c}: s^2 = 1, c absorbs; ONE(Z/2) acts by m·t = s∘m
    X = make_category(1, [(0, 0), (0, 0)], {(1, 1): 0, (1, 2): 2, (2, 1): 2, (2, 2): 2})
    G = one_object_two_group(grp.cyclic_group(2))
    A = validate_action(G, X, [[0]], [[0, 1], [1, 0], [2, 2]])
    direct, pulled = stabilizer_arrow(A, 2), stabilizer_arrow_pullback(A, 2)
    assert direct.U1.members == (0, 1)
    assert pulled.U1.members == (0,)


@settings(max_examples=40, deadline=None)
@given(action_st)
def test_fixed_points_match_brute_force(X):
    G = X.group
    S = X.space
    for U in enumerate_sub_two_groups(G):
        objs, arrs = fixed_point_data(X, U)
        brute_objs = [
            x for x in S.objects()
            if all(X.obj_act[x][A] == x for A in U.U0) and all(X.arr_act[S.identity[x]][g] == S.identity[x] for g in U.U1)
        ]
        assert objs == brute_objs
        for f in arrs:
            assert all(X.arr_act[f][G.i(A)] == f for A in U.U0)


@settings(max_examples=40, deadline=None)
@given(action_st)
def test_fixed_points_restrict_along_inclusions(X):
    subs = enumerate_sub_two_groups(X.group)
    D = fixed_points_functor(X, subs)
    for (u, v), r in D.restrictions.items():
        assert subs[u] <= subs[v]
        inc_u, inc_v = D.inclusions[u], D.inclusions[v]
        assert all(inc_u.obj_map[r.obj_map[x]] == inc_v.obj_map[x] for x in D.cats[v].objects())

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elmendorf2.catkit import (
    arrow_category,
    compose_functors,
    discrete_category,
    enumerate_functors,
    enumerate_nat_trans,
    functor_category,
    functor_defects,
    horizontal_compose,
    identity_functor,
    is_iso_of_categories,
    make_category,
    product_category,
    strict_pullback,
    subcategory,
    terminal_category,
    validate_category,
    validate_functor,
    vertical_compose,
    walking_arrow,
    whisker_left,
    whisker_right,
)
from elmendorf2.errors import AxiomViolation, SizeBoundExceeded

from oracles import brute_functors, brute_nat_trans, commuting_squares


def iso_pair():
    return make_category(2, [(0, 1), (1, 0)], {(2, 3): 1, (3, 2): 0})


def z2_monoid():
    return make_category(1, [(0, 0)], {(1, 1): 0})


def span():
    return make_category(3, [(0, 1), (0, 2)])


SMALL = [terminal_category(), discrete_category(2), walking_arrow(), iso_pair(), z2_monoid(), span()]


def test_validate_category_rejects_nonassociative_and_bad_identity():
    # an idempotent is a fine one-object category
    validate_category(1, [0, 0], [0, 0], [0], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    with pytest.raises(AxiomViolation):
        validate_category(1, [0, 0], [0, 0], [1], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    table = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2, (1, 1): 2, (2, 2): 1, (1, 2): 0, (2, 1): 1}
    with pytest.raises(AxiomViolation):
        validate_category(1, [0, 0, 0], [0, 0, 0], [0], table)


def test_arrow_category_of_walking_arrow():
    # [DERIVED] three objects (the arrows of •→•) and one square per commuting pair
    C = walking_arrow()
    A = arrow_category(C)
    assert A.n_objects == 3
    assert A.n_arrows == commuting_squares(C)


def test_product_sizes():
    P = product_category(walking_arrow(), iso_pair())
    assert P.n_objects == 4 and P.n_arrows == 3 * 4


@pytest.mark.parametrize("C,D", list(itertools.product(SMALL[:5], SMALL[:5])))
def test_functor_enumeration_matches_brute_force(C, D):
    got = {F.key() for F in enumerate_functors(C, D)}
    assert got == brute_functors(C, D)


@pytest.mark.parametrize("C,D", [(walking_arrow(), iso_pair()), (iso_pair(), iso_pair()), (z2_monoid(), z2_monoid()), (span(), walking_arrow())])
def test_nat_trans_enumeration_matches_brute_force(C, D):
    Fs = enumerate_functors(C, D)
    for F, G in itertools.product(Fs, repeat=2):
        got = {t.components for t in enumerate_nat_trans(F, G)}
        assert got == brute_nat_trans(F, G)


def test_functor_bound_is_enforced():
    from elmendorf2.bounds import Bounds

    with pytest.raises(SizeBoundExceeded):
        enumerate_functors(discrete_category(6), discrete_category(6), Bounds(max_functor_candidates=10))


def test_validate_functor_rejects_non_functor():
    with pytest.raises(AxiomViolation):
        validate_functor(walking_arrow(), walking_arrow(), (1, 0), (1, 0, 2))


def test_horizontal_composition_formulas_agree():
    C = walking_arrow()
    D = iso_pair()
    E = iso_pair()
    FC = enumerate_functors(C, D)
    GC = enumerate_functors(D, E)
    for F1, F2 in itertools.product(FC, repeat=2):
        for a in enumerate_nat_trans(F1, F2):
            for G1, G2 in itertools.product(GC, repeat=2):
                for b in enumerate_nat_trans(G1, G2):
                    h = horizontal_compose(b, a)
                    one = vertical_compose(whisker_right(b, F2), whisker_left(G1, a))
                    two = vertical_compose(whisker_left(G2, a), whisker_right(b, F1))
                    assert h.components == one.components == two.components


def test_is_iso_and_defects():
    ok, inv = is_iso_of_categories(identity_functor(iso_pair()))
    assert ok and compose_functors(inv, identity_functor(iso_pair())).key() == identity_functor(iso_pair()).key()
    collapse = validate_functor(discrete_category(2), terminal_category(), (0, 0), (0, 0))
    d = functor_defects(collapse)
    assert d["injective_on_objects"] == (0, 1)
    assert d["surjective_on_objects"] is None and d["faithful"] is None
    # hom(0, 1) is empty but its image hom(*, *) holds the identity
    assert d["full"] == (0, 1, 0)
    assert not is_iso_of_categories(collapse)[0]


def test_strict_pullback_and_subcategory():
    C = iso_pair()
    F = identity_functor(C)
    P, p1, p2 = strict_pullback(F, F)
    assert P.n_objects == C.n_objects and P.n_arrows == C.n_arrows
    S, inc = subcategory(C, [0], [0])
    assert S.n_objects == 1 and inc.obj_map == (0,)


def test_functor_category_counts():
    # Cat(•→•, •→•) has the three monotone maps and 1+1+1+... transformations
    FC, functors, trans = functor_category(walking_arrow(), walking_arrow())
    assert len(functors) == 3
    assert FC.n_arrows == sum(len(brute_nat_trans(F, G)) for F in functors for G in functors)


@st.composite
def small_pairs(draw):
    C = draw(st.sampled_from(SMALL[:5]))
    D = draw(st.sampled_from(SMALL[:5]))
    return C, D


@settings(max_examples=30, deadline=None)
@given(small_pairs(), st.data())
def test_composites_of_functors_are_functors(pair, data):
    C, D = pair
    Fs = enumerate_functors(C, D)
    Gs = enumerate_functors(D, C)
    F = data.draw(st.sampled_from(Fs))
    G = data.draw(st.sampled_from(Gs))
    H = compose_functors(G, F)
    validate_functor(C, C, H.obj_map, H.arr_map)
    assert H.key() in brute_functors(C, C)

"""Coset categories ``G/U`` and the orbit 2-category ``S(G)``.

Objects of ``S(G)`` are the sub-2-groups of ``G`` (one per ``U``, standing
for ``G/U``).  A morphism ``U -> V`` is an object ``A`` of ``G`` with
``U ⊆ A^-1 V A``; it acts by ``U0 X -> V0 (A⊗X)``.  A 2-cell ``A => B`` is
an arrow ``g: A -> B`` of ``G`` with ``g ⊗ 1_X ⊗ g^-1 ∈ V1`` for every
``X ∈ U0``.  Composition of 1-cells is ``B ⊗ A`` and of 2-cells is ``⊗``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .action import (
    ActionTwoCell,
    BGHom,
    EquivMap,
    GAction,
    bg_two_category,
    is_equivariant,
    validate_action,
    validate_action_2cell,
)
from .bounds import DEFAULT_BOUNDS, Bounds
from .catkit import (
    FinCat,
    Functor,
    NatTrans,
    TwoCat,
    TwoFunctor,
    product_category,
    validate_category,
    validate_functor,
    validate_nat_trans,
    validate_two_cat,
    validate_two_functor,
)
from .errors import AxiomViolation, InvalidMorphism, WellDefinednessViolation
from .twogroup import SubTwoGroup, TwoGroup, conjugate_sub_two_group, enumerate_sub_two_groups


def _right_cosets(group, members: Sequence[int]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Right cosets ``U a`` ordered by smallest element, and the coset index of each element."""
    which = [-1] * group.order
    cosets: list[tuple[int, ...]] = []
    for a in group.elements():
        if which[a] == -1:
            coset = tuple(sorted(group.mul(u, a) for u in members))
            for b in coset:
                which[b] = len(cosets)
            cosets.append(coset)
    return cosets, which


@dataclass(frozen=True, eq=False)
class CosetCategory:
    parent: TwoGroup
    U: SubTwoGroup
    action: GAction
    obj_coset: tuple[int, ...]  # element of G0 -> object index
    arr_coset: tuple[int, ...]  # element of G1 -> arrow index

    @property
    def space(self) -> FinCat:
        return self.action.space

    def representative(self, x: int) -> int:
        return self.space.obj_labels[x][0]

    def arrow_representative(self, m: int) -> int:
        return self.space.arr_labels[m][0]


def coset_category(G: TwoGroup, U: SubTwoGroup) -> CosetCategory:
    """``G/U`` with the right translation action; well-definedness checked on all representatives."""
    ocos, owhich = _right_cosets(G.G0, U.U0.members)
    acos, awhich = _right_cosets(G.G1, U.U1.members)
    dom, cod = [], []
    for k, coset in enumerate(acos):
        doms = {owhich[G.d0(g)] for g in coset}
        cods = {owhich[G.d1(g)] for g in coset}
        if len(doms) != 1 or len(cods) != 1:
            raise WellDefinednessViolation(f"endpoints of arrow coset {k} depend on the representative", coset)
        dom.append(doms.pop())
        cod.append(cods.pop())
    identity = []
    for coset in ocos:
        ids = {awhich[G.i(A)] for A in coset}
        if len(ids) != 1:
            raise WellDefinednessViolation("identity coset depends on the representative", coset)
        identity.append(ids.pop())
    comp = {}
    for (h, g), hg in G.comp.items():
        key = (awhich[h], awhich[g])
        val = awhich[hg]
        if comp.setdefault(key, val) != val:
            raise WellDefinednessViolation(f"composite of arrow cosets {key} depends on representatives", (h, g))
    try:
        X = validate_category(len(ocos), dom, cod, identity, comp, ocos, acos)
    except AxiomViolation as exc:
        raise WellDefinednessViolation(f"coset category is not a category: {exc}", exc.witness) from exc
    obj_act = []
    for coset in ocos:
        row = []
        for B in G.G0.elements():
            vals = {owhich[G.G0.mul(A, B)] for A in coset}
            if len(vals) != 1:
                raise WellDefinednessViolation("object action depends on the representative", (coset, B))
            row.append(vals.pop())
        obj_act.append(row)
    arr_act = []
    for coset in acos:
        row = []
        for h in G.G1.elements():
            vals = {awhich[G.G1.mul(g, h)] for g in coset}
            if len(vals) != 1:
                raise WellDefinednessViolation("arrow action depends on the representative", (coset, h))
            row.append(vals.pop())
        arr_act.append(row)
    M = validate_action(G, X, obj_act, arr_act, name=f"G/{U.key()}")
    return CosetCategory(G, U, M, tuple(owhich), tuple(awhich))


# ---------------------------------------------------------------------------
# morphisms and 2-cells


def _containment(G: TwoGroup, A: int, U: SubTwoGroup, V: SubTwoGroup) -> bool:
    W = conjugate_sub_two_group(V, A)
    return U <= W


def _maps_well_defined(G: TwoGroup, A: int, U: SubTwoGroup, V: SubTwoGroup) -> bool:
    _, ov = _right_cosets(G.G0, V.U0.members)
    _, av = _right_cosets(G.G1, V.U1.members)
    iA = G.i(A)
    for X in G.G0.elements():
        if len({ov[G.G0.prod(A, u, X)] for u in U.U0}) != 1:
            return False
    for g in G.G1.elements():
        if len({av[G.G1.prod(iA, u, g)] for u in U.U1}) != 1:
            return False
    return True


def is_orbit_morphism(G: TwoGroup, A: int, U: SubTwoGroup, V: SubTwoGroup) -> bool:
    """``U ⊆ A^-1 V A``; cross-checked against well-definedness of the coset maps."""
    by_containment = _containment(G, A, U, V)
    if by_containment != _maps_well_defined(G, A, U, V):
        raise AxiomViolation("containment and coset-map characterizations disagree", (A, U.key(), V.key()))
    return by_containment


def orbit_2cell_condition(G: TwoGroup, g: int, U: SubTwoGroup, V: SubTwoGroup) -> bool:
    """``g ⊗ 1_X ⊗ g^-1 ∈ V1`` for every ``X ∈ U0``."""
    gi = G.G1.inv(g)
    return all(G.G1.prod(g, G.i(X), gi) in V.U1 for X in U.U0)


@dataclass(frozen=True, eq=False)
class OrbitTwoCat:
    """``S(G)``; with ``identified`` set, parallel cells realizing the same functor or transformation are merged.

    ``hom_objects[(u, v)]`` lists one representative element per 1-cell and
    ``hom_arrows[(u, v)]`` one per 2-cell; ``morphism_index`` and
    ``two_cell_index`` accept any valid raw element.
    """

    group: TwoGroup
    subs: tuple[SubTwoGroup, ...]
    cosets: tuple[CosetCategory, ...]
    two_cat: TwoCat
    hom_objects: dict  # (u, v) -> list of elements A of G0
    hom_arrows: dict  # (u, v) -> list of elements g of G1
    obj_class: dict  # (u, v) -> {valid A: 1-cell index}
    arr_class: dict  # (u, v) -> {valid g: 2-cell index}
    identified: bool = False

    @property
    def n_objects(self) -> int:
        return len(self.subs)

    def objects(self) -> range:
        return range(len(self.subs))

    def hom(self, u: int, v: int) -> FinCat:
        return self.two_cat.hom[(u, v)]

    def morphism_index(self, u: int, v: int, A: int) -> int:
        return self.obj_class[(u, v)][A]

    def two_cell_index(self, u: int, v: int, g: int) -> int:
        return self.arr_class[(u, v)][g]

    def has_morphism(self, u: int, v: int, A: int) -> bool:
        return A in self.obj_class[(u, v)]

    def sub_index(self, U: SubTwoGroup) -> int:
        return self.subs.index(U)

    def realize(self, u: int, v: int, f: int) -> Functor:
        """Realized functor of the 1-cell with index ``f``."""
        return _realize_functor(self.group, self.cosets, u, v, self.hom_objects[(u, v)][f])

    def realize_cell(self, u: int, v: int, alpha: int) -> NatTrans:
        return _realize_2cell_trans(self.group, self.cosets, u, v, self.hom_arrows[(u, v)][alpha])


def is_orbit_2cell(S: OrbitTwoCat, g: int, A: int, B: int, u: int, v: int) -> bool:
    """Validity of ``g: A => B`` in ``Hom(G/U, G/V)``; when valid, the realized components are checked natural."""
    G = S.group
    if G.d0(g) != A or G.d1(g) != B:
        return False
    U, V = S.subs[u], S.subs[v]
    if not (is_orbit_morphism(G, A, U, V) and is_orbit_morphism(G, B, U, V)):
        return False
    if not orbit_2cell_condition(G, g, U, V):
        return False
    _realize_2cell_trans(G, S.cosets, u, v, g)
    return True


def _classes(elements: Sequence[int], key) -> tuple[list[int], dict[int, int]]:
    reps: list[int] = []
    seen: dict = {}
    cls: dict[int, int] = {}
    for a in elements:
        k = key(a)
        if k not in seen:
            seen[k] = len(reps)
            reps.append(a)
        cls[a] = seen[k]
    return reps, cls


def build_orbit_2cat(G: TwoGroup, bounds: Bounds = DEFAULT_BOUNDS, identify: bool = False) -> OrbitTwoCat:
    subs = tuple(enumerate_sub_two_groups(G, bounds))
    cosets = tuple(coset_category(G, U) for U in subs)
    n = len(subs)
    hom, hom_objects, hom_arrows, obj_class, arr_class = {}, {}, {}, {}, {}
    for u, v in itertools.product(range(n), repeat=2):
        U, V = subs[u], subs[v]
        valid = [A for A in G.G0.elements() if is_orbit_morphism(G, A, U, V)]
        valid_set = set(valid)
        cells = [g for g in G.G1.elements() if G.d0(g) in valid_set and G.d1(g) in valid_set and orbit_2cell_condition(G, g, U, V)]
        if identify:
            objs, ocls = _classes(valid, lambda A: _realize_functor(G, cosets, u, v, A).key())
            arrs, acls = _classes(cells, lambda g: _realize_2cell_trans(G, cosets, u, v, g).key())
        else:
            objs, ocls = valid, {A: k for k, A in enumerate(valid)}
            arrs, acls = cells, {g: k for k, g in enumerate(cells)}
        comp = {}
        for (h, g), hg in G.comp.items():
            if h in acls and g in acls:
                if hg not in acls:
                    raise AxiomViolation(f"2-cells of hom({u},{v}) not closed under composition", (h, g))
                key = (acls[h], acls[g])
                if comp.setdefault(key, acls[hg]) != acls[hg]:
                    raise WellDefinednessViolation(f"vertical composition in hom({u},{v}) depends on representatives", (h, g))
        hom[(u, v)] = validate_category(
            len(objs),
            [ocls[G.d0(g)] for g in arrs],
            [ocls[G.d1(g)] for g in arrs],
            [acls[G.i(A)] for A in objs],
            comp,
            objs,
            arrs,
        )
        hom_objects[(u, v)], hom_arrows[(u, v)] = objs, arrs
        obj_class[(u, v)], arr_class[(u, v)] = ocls, acls
    compose = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        Hab, Hbc, Hac = hom[(a, b)], hom[(b, c)], hom[(a, c)]
        P = product_category(Hbc, Hab)
        try:
            obj = tuple(
                _unique({obj_class[(a, c)][G.G0.mul(B, A)] for B in _members(obj_class[(b, c)], j) for A in _members(obj_class[(a, b)], k)})
                for j in range(Hbc.n_objects)
                for k in range(Hab.n_objects)
            )
            arr = tuple(
                _unique({arr_class[(a, c)][G.G1.mul(h, g)] for h in _members(arr_class[(b, c)], j) for g in _members(arr_class[(a, b)], k)})
                for j in range(Hbc.n_arrows)
                for k in range(Hab.n_arrows)
            )
        except KeyError as exc:
            raise AxiomViolation(f"composition ({a},{b},{c}) leaves the target hom-category", (a, b, c)) from exc
        compose[(a, b, c)] = Functor(P, Hac, obj, arr)
    identity = tuple(obj_class[(u, u)][0] for u in range(n))
    T = validate_two_cat(n, hom, compose, identity, [U.key() for U in subs])
    return OrbitTwoCat(G, subs, cosets, T, hom_objects, hom_arrows, obj_class, arr_class, identify)


def _members(cls: dict[int, int], k: int) -> list[int]:
    return [a for a, c in cls.items() if c == k]


def _unique(values: set) -> int:
    if len(values) != 1:
        raise WellDefinednessViolation("composite depends on the chosen representatives", sorted(values))
    return values.pop()


# ---------------------------------------------------------------------------
# realization in BG


def _realize_functor(G: TwoGroup, cosets, u: int, v: int, A: int) -> Functor:
    CU, CV = cosets[u], cosets[v]
    iA = G.i(A)
    obj = tuple(CV.obj_coset[G.G0.mul(A, CU.representative(x))] for x in CU.space.objects())
    arr = tuple(CV.arr_coset[G.G1.mul(iA, CU.arrow_representative(m))] for m in CU.space.arrows())
    return validate_functor(CU.space, CV.space, obj, arr)


def _realize_2cell_trans(G: TwoGroup, cosets, u: int, v: int, g: int) -> NatTrans:
    CU, CV = cosets[u], cosets[v]
    F = _realize_functor(G, cosets, u, v, G.d0(g))
    K = _realize_functor(G, cosets, u, v, G.d1(g))
    comps = tuple(CV.arr_coset[G.G1.mul(g, G.i(CU.representative(x)))] for x in CU.space.objects())
    return validate_nat_trans(F, K, comps)


def realize_orbit_morphism(S: OrbitTwoCat, u: int, v: int, A: int) -> EquivMap:
    """The equivariant functor ``U0 X -> V0 (A⊗X)``, ``U1 g -> V1 (1_A ⊗ g)``."""
    if not is_orbit_morphism(S.group, A, S.subs[u], S.subs[v]):
        raise InvalidMorphism(f"{A} is not a morphism G/U -> G/V", (A, u, v))
    H = _realize_functor(S.group, S.cosets, u, v, A)
    return is_equivariant(H, S.cosets[u].action, S.cosets[v].action)


def realize_orbit_2cell(S: OrbitTwoCat, u: int, v: int, g: int) -> ActionTwoCell:
    """Components ``V1 (g ⊗ 1_X)`` at each object ``U0 X``."""
    G = S.group
    A, B = G.d0(g), G.d1(g)
    if not (
        is_orbit_morphism(G, A, S.subs[u], S.subs[v])
        and is_orbit_morphism(G, B, S.subs[u], S.subs[v])
        and orbit_2cell_condition(G, g, S.subs[u], S.subs[v])
    ):
        raise InvalidMorphism(f"{g} is not a 2-cell of hom(G/U, G/V)", (g, u, v))
    theta = _realize_2cell_trans(G, S.cosets, u, v, g)
    return validate_action_2cell(
        theta, realize_orbit_morphism(S, u, v, A), realize_orbit_morphism(S, u, v, B)
    )


def realization_two_functor(S: OrbitTwoCat, bounds: Bounds = DEFAULT_BOUNDS) -> tuple[TwoFunctor, TwoCat, dict]:
    """Realization ``S(G) -> BG`` onto the coset actions, validated as a strict 2-functor."""
    actions = [C.action for C in S.cosets]
    BG, homs = bg_two_category(actions, bounds=bounds)
    hom_functors = {}
    for u, v in itertools.product(S.objects(), repeat=2):
        H: BGHom = homs[(u, v)]
        obj = tuple(H.map_index(realize_orbit_morphism(S, u, v, A).functor) for A in S.hom_objects[(u, v)])
        arr = tuple(H.cell_index(realize_orbit_2cell(S, u, v, g).trans) for g in S.hom_arrows[(u, v)])
        hom_functors[(u, v)] = Functor(S.hom(u, v), H.category, obj, arr)
    F = validate_two_functor(S.two_cat, BG, tuple(S.objects()), hom_functors)
    return F, BG, homs


def right_ore_check(S: OrbitTwoCat) -> tuple[bool, dict]:
    """Every cospan ``f: U -> W <- V: g`` completes to a square ``f h = g k``.

    Returns the verdict and, per cospan, the first witness ``(d, h, k)`` found.
    """
    G = S.group
    witnesses = {}
    ok = True
    for u, v, w in itertools.product(S.objects(), repeat=3):
        for f in S.hom_objects[(u, w)]:
            for g in S.hom_objects[(v, w)]:
                found = None
                for d in S.objects():
                    for h in S.hom_objects[(d, u)]:
                        target = G.G0.mul(f, h)
                        k = G.G0.mul(G.G0.inv(g), target)
                        if S.has_morphism(d, v, k):
                            found = (d, h, k)
                            break
                    if found:
                        break
                witnesses[(u, v, w, f, g)] = found
                ok = ok and found is not None
    return ok, witnesses

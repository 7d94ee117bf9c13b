"""Right actions of strict 2-groups on finite categories.

An action is a functor ``M: X × G -> X`` written ``x·A`` on objects and
``m·g`` on arrows.  Equivariant functors and compatible transformations
between actions form the hom-categories of the 2-category ``BG``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .bounds import DEFAULT_BOUNDS, Bounds, check_bound
from .catkit import (
    FinCat,
    Functor,
    NatTrans,
    TwoCat,
    arrow_category,
    category_of,
    compose_functors,
    discrete_category,
    enumerate_functors,
    enumerate_nat_trans,
    horizontal_compose,
    identity_functor,
    product_category,
    strict_pullback,
    subcategory,
    terminal_category,
    validate_functor,
    validate_nat_trans,
    validate_two_cat,
    whisker_left,
    whisker_right,
)
from .errors import (
    AssociativityViolation,
    AxiomViolation,
    NotCompatible,
    NotEquivariant,
    NotFunctorial,
    UnitLawViolation,
)
from .twogroup import SubTwoGroup, TwoGroup, make_sub_two_group


@dataclass(frozen=True, eq=False)
class GAction:
    group: TwoGroup
    space: FinCat
    obj_act: tuple[tuple[int, ...], ...]  # obj_act[x][A] = x·A
    arr_act: tuple[tuple[int, ...], ...]  # arr_act[m][g] = m·g
    name: str | None = None

    def act_obj(self, x: int, A: int) -> int:
        return self.obj_act[x][A]

    def act_arr(self, m: int, g: int) -> int:
        return self.arr_act[m][g]

    @cached_property
    def action_functor(self) -> Functor:
        """``M: X × U(G) -> X`` on :func:`~elmendorf2.catkit.product_category` indexing."""
        X, G = self.space, self.group
        P = product_category(X, G.underlying_category)
        obj = tuple(self.obj_act[x][A] for x in X.objects() for A in G.G0.elements())
        arr = tuple(self.arr_act[m][g] for m in X.arrows() for g in G.G1.elements())
        return Functor(P, X, obj, arr)

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"GAction({label}{self.space!r})"


def validate_action(
    group: TwoGroup,
    space: FinCat,
    obj_act: Sequence[Sequence[int]],
    arr_act: Sequence[Sequence[int]],
    name: str | None = None,
) -> GAction:
    G, X = group, space
    oa = tuple(tuple(int(v) for v in row) for row in obj_act)
    aa = tuple(tuple(int(v) for v in row) for row in arr_act)
    if len(oa) != X.n_objects or any(len(r) != G.G0.order for r in oa):
        raise NotFunctorial("object action table must be |X0| x |G0|", None)
    if len(aa) != X.n_arrows or any(len(r) != G.G1.order for r in aa):
        raise NotFunctorial("arrow action table must be |X1| x |G1|", None)
    for x in X.objects():
        for A in G.G0.elements():
            if not 0 <= oa[x][A] < X.n_objects:
                raise NotFunctorial(f"x·A out of range at ({x},{A})", (x, A))
    for m in X.arrows():
        for g in G.G1.elements():
            mg = aa[m][g]
            if not 0 <= mg < X.n_arrows:
                raise NotFunctorial(f"m·g out of range at ({m},{g})", (m, g))
            if X.dom[mg] != oa[X.dom[m]][G.d0(g)] or X.cod[mg] != oa[X.cod[m]][G.d1(g)]:
                raise NotFunctorial(f"m·g has wrong endpoints at ({m},{g})", (m, g))
    for x in X.objects():
        for A in G.G0.elements():
            if aa[X.identity[x]][G.i(A)] != X.identity[oa[x][A]]:
                raise NotFunctorial(f"1_x·1_A != 1_(x·A) at ({x},{A})", (x, A))
    for (n, m), nm in X.comp.items():
        for (h, g), hg in G.comp.items():
            if aa[nm][hg] != X.comp[(aa[n][h], aa[m][g])]:
                raise NotFunctorial(f"(n∘m)·(h∘g) != (n·h)∘(m·g) at m={m}, n={n}, g={g}, h={h}", (m, n, g, h))
    for x in X.objects():
        if oa[x][0] != x:
            raise UnitLawViolation(f"x·I != x at {x}", x)
    for m in X.arrows():
        if aa[m][0] != m:
            raise UnitLawViolation(f"m·1_I != m at {m}", m)
    for x in X.objects():
        for A in G.G0.elements():
            for B in G.G0.elements():
                if oa[oa[x][A]][B] != oa[x][G.G0.mul(A, B)]:
                    raise AssociativityViolation(f"(x·A)·B != x·(A⊗B) at ({x},{A},{B})", (x, A, B))
    for m in X.arrows():
        for g in G.G1.elements():
            for h in G.G1.elements():
                if aa[aa[m][g]][h] != aa[m][G.G1.mul(g, h)]:
                    raise AssociativityViolation(f"(m·g)·h != m·(g⊗h) at ({m},{g},{h})", (m, g, h))
    return GAction(G, X, oa, aa, name)


def trivial_action(G: TwoGroup, X: FinCat, name: str | None = None) -> GAction:
    return validate_action(
        G,
        X,
        [[x] * G.G0.order for x in X.objects()],
        [[m] * G.G1.order for m in X.arrows()],
        name,
    )


def regular_action(G: TwoGroup, name: str | None = None) -> GAction:
    """Right translation of ``G`` on its own underlying category."""
    return validate_action(
        G,
        G.underlying_category,
        [[G.G0.mul(x, A) for A in G.G0.elements()] for x in G.G0.elements()],
        [[G.G1.mul(m, g) for g in G.G1.elements()] for m in G.G1.elements()],
        name,
    )


def discrete_action(G: TwoGroup, obj_act: Sequence[Sequence[int]], name: str | None = None) -> GAction:
    """Action on a discrete category given by a permutation table on objects."""
    n = len(obj_act)
    X = discrete_category(n)
    arr = [[obj_act[x][G.d0(g)] for g in G.G1.elements()] for x in range(n)]
    return validate_action(G, X, obj_act, arr, name)


# ---------------------------------------------------------------------------
# equivariant functors and compatible transformations


@dataclass(frozen=True, eq=False)
class EquivMap:
    src: GAction
    tgt: GAction
    functor: Functor

    def key(self) -> tuple:
        return self.functor.key()


@dataclass(frozen=True, eq=False)
class ActionTwoCell:
    src: EquivMap
    tgt: EquivMap
    trans: NatTrans


def equivariance_defect(H: Functor, X: GAction, Y: GAction):
    for x in X.space.objects():
        for A in X.group.G0.elements():
            if H.obj_map[X.obj_act[x][A]] != Y.obj_act[H.obj_map[x]][A]:
                return ("object", x, A)
    for m in X.space.arrows():
        for g in X.group.G1.elements():
            if H.arr_map[X.arr_act[m][g]] != Y.arr_act[H.arr_map[m]][g]:
                return ("arrow", m, g)
    return None


def is_equivariant(H: Functor, X: GAction, Y: GAction) -> EquivMap:
    validate_functor(X.space, Y.space, H.obj_map, H.arr_map)
    defect = equivariance_defect(H, X, Y)
    if defect is not None:
        kind, a, b = defect
        raise NotEquivariant(f"H({kind} {a}·{b}) != H({a})·{b}", defect)
    return EquivMap(X, Y, H)


def compatibility_defect(theta: NatTrans, X: GAction, Y: GAction):
    """First ``(x, A)`` with ``theta_{x·A} != theta_x · i(A)``, or ``None``."""
    G = X.group
    for x in X.space.objects():
        for A in G.G0.elements():
            if theta.components[X.obj_act[x][A]] != Y.arr_act[theta.components[x]][G.i(A)]:
                return (x, A)
    return None


def diagrammatic_compatibility(theta: NatTrans, X: GAction, Y: GAction) -> bool:
    """The whiskered form ``theta M_X == M_Y (theta × 1)`` as 2-cells of ``Cat``."""
    G = X.group
    UG = G.underlying_category
    n1 = UG.n_arrows
    P = product_category(X.space, UG)
    PY = product_category(Y.space, UG)

    def times_identity(F: Functor) -> Functor:
        obj = tuple(F.obj_map[x] * UG.n_objects + A for x in X.space.objects() for A in UG.objects())
        arr = tuple(F.arr_map[m] * n1 + g for m in X.space.arrows() for g in UG.arrows())
        return Functor(P, PY, obj, arr)

    Hx, Kx = times_identity(theta.dom), times_identity(theta.cod)
    comps = tuple(theta.components[x] * n1 + UG.identity[A] for x in X.space.objects() for A in UG.objects())
    theta_x_1 = NatTrans(Hx, Kx, comps)
    lhs = whisker_right(theta, X.action_functor)
    rhs = whisker_left(Y.action_functor, theta_x_1)
    return lhs.components == rhs.components


def validate_action_2cell(theta: NatTrans, H: EquivMap, K: EquivMap) -> ActionTwoCell:
    validate_nat_trans(H.functor, K.functor, theta.components)
    defect = compatibility_defect(theta, H.src, H.tgt)
    if defect is not None:
        x, A = defect
        raise NotCompatible(f"theta_(x·A) != theta_x·i(A) at x={x}, A={A}", defect)
    return ActionTwoCell(H, K, NatTrans(H.functor, K.functor, tuple(theta.components)))


@dataclass(frozen=True, eq=False)
class BGHom:
    """``BG(X, Y)``: equivariant functors and compatible transformations."""

    src: GAction
    tgt: GAction
    category: FinCat
    maps: list[Functor]
    cells: list[NatTrans]

    @cached_property
    def _map_index(self) -> dict:
        return {F.key(): k for k, F in enumerate(self.maps)}

    @cached_property
    def _cell_index(self) -> dict:
        return {t.key(): k for k, t in enumerate(self.cells)}

    def map_index(self, F: Functor) -> int:
        return self._map_index[F.key()]

    def cell_index(self, t: NatTrans) -> int:
        return self._cell_index[t.key()]


def bg_hom(X: GAction, Y: GAction, bounds: Bounds = DEFAULT_BOUNDS) -> BGHom:
    check_bound(X.space.n_objects, bounds.max_space_objects, "|X0|")
    check_bound(Y.space.n_objects, bounds.max_space_objects, "|Y0|")
    check_bound(X.space.n_arrows, bounds.max_space_arrows, "|X1|")
    check_bound(Y.space.n_arrows, bounds.max_space_arrows, "|Y1|")
    maps = [F for F in enumerate_functors(X.space, Y.space, bounds) if equivariance_defect(F, X, Y) is None]
    cells = []
    for F in maps:
        for K in maps:
            for t in enumerate_nat_trans(F, K, bounds):
                if compatibility_defect(t, X, Y) is None:
                    cells.append(t)
    return BGHom(X, Y, category_of(maps, cells), maps, cells)


def bg_two_category(actions: Sequence[GAction], homs: Mapping[tuple[int, int], BGHom] | None = None,
                    bounds: Bounds = DEFAULT_BOUNDS) -> tuple[TwoCat, dict[tuple[int, int], BGHom]]:
    """The full sub-2-category of ``BG`` on the given actions."""
    n = len(actions)
    homs = dict(homs or {})
    for a, b in itertools.product(range(n), repeat=2):
        if (a, b) not in homs:
            homs[(a, b)] = bg_hom(actions[a], actions[b], bounds)
    compose = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        Hab, Hbc, Hac = homs[(a, b)], homs[(b, c)], homs[(a, c)]
        P = product_category(Hbc.category, Hab.category)
        obj = tuple(Hac.map_index(compose_functors(G, F)) for G in Hbc.maps for F in Hab.maps)
        arr = tuple(Hac.cell_index(horizontal_compose(be, al)) for be in Hbc.cells for al in Hab.cells)
        compose[(a, b, c)] = Functor(P, Hac.category, obj, arr)
    identity = tuple(homs[(a, a)].map_index(identity_functor(actions[a].space)) for a in range(n))
    T = validate_two_cat(n, {k: h.category for k, h in homs.items()}, compose, identity)
    return T, homs


# ---------------------------------------------------------------------------
# stabilizers and fixed points


def stabilizer_object(X: GAction, x: int) -> SubTwoGroup:
    """``Stab(x)``: objects ``A`` with ``x·A = x``, arrows ``g`` with ``1_x·g = 1_x``."""
    G = X.group
    ix = X.space.identity[x]
    U0 = [A for A in G.G0.elements() if X.obj_act[x][A] == x]
    U1 = [g for g in G.G1.elements() if X.arr_act[ix][g] == ix]
    return make_sub_two_group(G, U0, U1)


def stabilizer_arrow(X: GAction, m: int) -> SubTwoGroup:
    """``Stab(m)``: objects ``A`` with ``m·i(A) = m``, arrows ``g`` with ``m·g = m``.

    Raises :class:`~elmendorf2.errors.NotASubTwoGroup` when the arrow part
    has an endpoint outside the object part.
    """
    G = X.group
    U0 = [A for A in G.G0.elements() if X.arr_act[m][G.i(A)] == m]
    U1 = [g for g in G.G1.elements() if X.arr_act[m][g] == m]
    return make_sub_two_group(G, U0, U1)


def orbit_functor_object(X: GAction, x: int) -> Functor:
    """``x·(-): U(G) -> X``."""
    G = X.group
    ix = X.space.identity[x]
    return Functor(
        G.underlying_category,
        X.space,
        tuple(X.obj_act[x][A] for A in G.G0.elements()),
        tuple(X.arr_act[ix][g] for g in G.G1.elements()),
    )


def orbit_functor_arrow(X: GAction, m: int) -> tuple[Functor, FinCat]:
    """``m·(-): U(G) -> X^2``; ``g: A -> B`` goes to the square with sides ``1_dom(m)·g``, ``1_cod(m)·g``."""
    G, S = X.group, X.space
    X2 = arrow_category(S)
    idom, icod = S.identity[S.dom[m]], S.identity[S.cod[m]]
    obj = tuple(X.arr_act[m][G.i(A)] for A in G.G0.elements())
    arr = tuple(
        X2.arr_index((obj[G.d0(g)], obj[G.d1(g)], X.arr_act[idom][g], X.arr_act[icod][g]))
        for g in G.G1.elements()
    )
    return Functor(G.underlying_category, X2, obj, arr), X2


def _point(C: FinCat, x: int, arrow: int) -> Functor:
    return Functor(terminal_category(), C, (x,), (arrow,))


def stabilizer_object_pullback(X: GAction, x: int) -> SubTwoGroup:
    P, p1, _ = strict_pullback(orbit_functor_object(X, x), _point(X.space, x, X.space.identity[x]))
    return make_sub_two_group(X.group, p1.obj_map, p1.arr_map)


def stabilizer_arrow_pullback(X: GAction, m: int) -> SubTwoGroup:
    F, X2 = orbit_functor_arrow(X, m)
    P, p1, _ = strict_pullback(F, _point(X2, m, X2.identity[m]))
    return make_sub_two_group(X.group, p1.obj_map, p1.arr_map)


def fixed_point_data(X: GAction, U: SubTwoGroup) -> tuple[list[int], list[int]]:
    """Objects and arrows of ``X^U``, as index lists into ``X``."""
    G, S = X.group, X.space
    objs = [
        x
        for x in S.objects()
        if all(X.obj_act[x][A] == x for A in U.U0)
        and all(X.arr_act[S.identity[x]][g] == S.identity[x] for g in U.U1)
    ]
    fixed = set(objs)
    arrs = [
        f
        for f in S.arrows()
        if S.dom[f] in fixed and S.cod[f] in fixed and all(X.arr_act[f][G.i(A)] == f for A in U.U0)
    ]
    return objs, arrs


def fixed_points(X: GAction, U: SubTwoGroup) -> tuple[FinCat, Functor]:
    """``X^U`` with its inclusion into ``X``."""
    objs, arrs = fixed_point_data(X, U)
    return subcategory(X.space, objs, arrs)


@dataclass(frozen=True, eq=False)
class FixedPointDiagram:
    """``U -> X^U`` on the sub-2-group poset, with restriction inclusions."""

    action: GAction
    subs: tuple[SubTwoGroup, ...]
    cats: tuple[FinCat, ...]
    inclusions: tuple[Functor, ...]  # X^U -> X
    restrictions: Mapping[tuple[int, int], Functor]  # (u, v) with U ⊆ V: X^V -> X^U


def fixed_points_functor(X: GAction, subs: Sequence[SubTwoGroup]) -> FixedPointDiagram:
    cats, incs = [], []
    for U in subs:
        C, inc = fixed_points(X, U)
        cats.append(C)
        incs.append(inc)
    restrictions = {}
    n = len(subs)
    for u, v in itertools.product(range(n), repeat=2):
        if not subs[u] <= subs[v]:
            continue
        oidx = {x: k for k, x in enumerate(incs[u].obj_map)}
        aidx = {f: k for k, f in enumerate(incs[u].arr_map)}
        try:
            r = Functor(
                cats[v],
                cats[u],
                tuple(oidx[x] for x in incs[v].obj_map),
                tuple(aidx[f] for f in incs[v].arr_map),
            )
        except KeyError as exc:
            raise AxiomViolation(f"X^V is not contained in X^U for U={u}, V={v}", (u, v)) from exc
        validate_functor(r.dom, r.cod, r.obj_map, r.arr_map)
        restrictions[(u, v)] = r
    for u, v, w in itertools.product(range(n), repeat=3):
        if (u, v) in restrictions and (v, w) in restrictions:
            if compose_functors(restrictions[(u, v)], restrictions[(v, w)]) != restrictions[(u, w)]:
                raise AxiomViolation(f"restrictions do not compose at ({u},{v},{w})", (u, v, w))
    return FixedPointDiagram(X, tuple(subs), tuple(cats), tuple(incs), restrictions)

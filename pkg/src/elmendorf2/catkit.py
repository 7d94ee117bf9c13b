"""Finite 1- and 2-category kernel.

Categories are stored as explicit tables: arrows are indices with a
domain and codomain, and composition is a dict on composable pairs keyed
``(g, f) -> g∘f``.  All axiom checks are exhaustive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Sequence

from .bounds import DEFAULT_BOUNDS, Bounds, check_bound
from .errors import AxiomViolation, NotComposable, SizeBoundExceeded


@dataclass(frozen=True, eq=False)
class FinCat:
    n_objects: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    identity: tuple[int, ...]
    comp: Mapping[tuple[int, int], int]
    obj_labels: tuple | None = field(default=None, repr=False)
    arr_labels: tuple | None = field(default=None, repr=False)

    @property
    def n_arrows(self) -> int:
        return len(self.dom)

    def objects(self) -> range:
        return range(self.n_objects)

    def arrows(self) -> range:
        return range(len(self.dom))

    def compose(self, g: int, f: int) -> int:
        """``g ∘ f`` (first ``f``, then ``g``)."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise NotComposable(f"arrows {g} and {f} are not composable", (g, f)) from None

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for f in self.arrows():
            out.setdefault((self.dom[f], self.cod[f]), []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._homs.get((a, b), ())

    @cached_property
    def _obj_index(self) -> dict:
        return {lab: k for k, lab in enumerate(self.obj_labels or ())}

    @cached_property
    def _arr_index(self) -> dict:
        return {lab: k for k, lab in enumerate(self.arr_labels or ())}

    def obj_index(self, label) -> int:
        return self._obj_index[label]

    def arr_index(self, label) -> int:
        return self._arr_index[label]

    def obj_label(self, x: int):
        return self.obj_labels[x] if self.obj_labels is not None else x

    def arr_label(self, f: int):
        return self.arr_labels[f] if self.arr_labels is not None else f

    def is_identity(self, f: int) -> bool:
        return self.identity[self.dom[f]] == f

    def structure(self) -> tuple:
        return (self.n_objects, self.dom, self.cod, self.identity, tuple(sorted(self.comp.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, FinCat) and self.structure() == other.structure()

    def __hash__(self) -> int:
        return hash((self.n_objects, self.dom, self.cod, self.identity))

    def __repr__(self) -> str:
        return f"FinCat(objects={self.n_objects}, arrows={self.n_arrows})"


@dataclass(frozen=True, eq=False)
class Functor:
    dom: FinCat
    cod: FinCat
    obj_map: tuple[int, ...]
    arr_map: tuple[int, ...]

    def key(self) -> tuple:
        return (self.obj_map, self.arr_map)

    def __call__(self, f: int) -> int:
        return self.arr_map[f]

    def on_obj(self, x: int) -> int:
        return self.obj_map[x]

    def __eq__(self, other) -> bool:
        return isinstance(other, Functor) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Functor(obj={list(self.obj_map)}, arr={list(self.arr_map)})"


@dataclass(frozen=True, eq=False)
class NatTrans:
    dom: Functor
    cod: Functor
    components: tuple[int, ...]

    def key(self) -> tuple:
        return (self.dom.key(), self.cod.key(), self.components)

    def __getitem__(self, x: int) -> int:
        return self.components[x]

    def __eq__(self, other) -> bool:
        return isinstance(other, NatTrans) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"NatTrans({list(self.components)})"


# ---------------------------------------------------------------------------
# construction and validation of 1-categories


def validate_category(
    n_objects: int,
    dom: Sequence[int],
    cod: Sequence[int],
    identity: Sequence[int],
    comp: Mapping[tuple[int, int], int],
    obj_labels: Sequence | None = None,
    arr_labels: Sequence | None = None,
) -> FinCat:
    dom, cod, identity = tuple(dom), tuple(cod), tuple(identity)
    n_arr = len(dom)
    if len(cod) != n_arr:
        raise AxiomViolation("dom and cod tables differ in length", (len(dom), len(cod)))
    for f in range(n_arr):
        if not (0 <= dom[f] < n_objects and 0 <= cod[f] < n_objects):
            raise AxiomViolation(f"arrow {f} has endpoints out of range", f)
    if len(identity) != n_objects:
        raise AxiomViolation("identity table must have one entry per object", len(identity))
    for x, e in enumerate(identity):
        if not 0 <= e < n_arr or dom[e] != x or cod[e] != x:
            raise AxiomViolation(f"identity of object {x} is not an endomorphism of {x}", x)
    comp = dict(comp)
    for (g, f), h in comp.items():
        if not (0 <= g < n_arr and 0 <= f < n_arr and 0 <= h < n_arr):
            raise AxiomViolation(f"composition entry ({g},{f}) -> {h} out of range", (g, f))
        if cod[f] != dom[g]:
            raise AxiomViolation(f"composition defined on non-composable pair ({g},{f})", (g, f))
        if dom[h] != dom[f] or cod[h] != cod[g]:
            raise AxiomViolation(f"composite ({g},{f}) -> {h} has wrong endpoints", (g, f, h))
    by_dom: dict[int, list[int]] = {}
    for g in range(n_arr):
        by_dom.setdefault(dom[g], []).append(g)
    for f in range(n_arr):
        for g in by_dom.get(cod[f], ()):
            if (g, f) not in comp:
                raise AxiomViolation(f"composition missing for composable pair ({g},{f})", (g, f))
    for f in range(n_arr):
        if comp[(identity[cod[f]], f)] != f or comp[(f, identity[dom[f]])] != f:
            raise AxiomViolation(f"identity law fails at arrow {f}", f)
    for f in range(n_arr):
        for g in by_dom.get(cod[f], ()):
            gf = comp[(g, f)]
            for h in by_dom.get(cod[g], ()):
                if comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                    raise AxiomViolation(f"associativity fails at ({h},{g},{f})", (h, g, f))
    return FinCat(
        n_objects,
        dom,
        cod,
        identity,
        comp,
        tuple(obj_labels) if obj_labels is not None else None,
        tuple(arr_labels) if arr_labels is not None else None,
    )


def make_category(
    n_objects: int,
    arrows: Sequence[tuple[int, int]],
    composites: Mapping[tuple[int, int], int] | None = None,
    obj_labels: Sequence | None = None,
    arr_labels: Sequence | None = None,
) -> FinCat:
    """Category whose first ``n_objects`` arrows are added identities.

    ``arrows`` lists the non-identity arrows as ``(dom, cod)``; they are
    numbered from ``n_objects`` on.  ``composites`` uses that numbering and
    need only mention pairs of non-identity arrows.
    """
    dom = list(range(n_objects)) + [a for a, _ in arrows]
    cod = list(range(n_objects)) + [b for _, b in arrows]
    identity = list(range(n_objects))
    comp = dict(composites or {})
    for f in range(len(dom)):
        comp[(cod[f], f)] = f
        comp[(f, dom[f])] = f
    if arr_labels is not None and len(arr_labels) == len(arrows):
        arr_labels = [("id", x) for x in range(n_objects)] + list(arr_labels)
    return validate_category(n_objects, dom, cod, identity, comp, obj_labels, arr_labels)


def terminal_category() -> FinCat:
    return validate_category(1, (0,), (0,), (0,), {(0, 0): 0})


def discrete_category(n: int, labels: Sequence | None = None) -> FinCat:
    return validate_category(
        n, tuple(range(n)), tuple(range(n)), tuple(range(n)), {(x, x): x for x in range(n)}, labels, labels
    )


def empty_category() -> FinCat:
    return validate_category(0, (), (), (), {})


def walking_arrow() -> FinCat:
    """The category ``• -> •``."""
    return make_category(2, [(0, 1)])


def validate_functor(dom: FinCat, cod: FinCat, obj_map: Sequence[int], arr_map: Sequence[int]) -> Functor:
    obj_map, arr_map = tuple(obj_map), tuple(arr_map)
    if len(obj_map) != dom.n_objects or len(arr_map) != dom.n_arrows:
        raise AxiomViolation("functor maps are not total", (len(obj_map), len(arr_map)))
    for x in dom.objects():
        if not 0 <= obj_map[x] < cod.n_objects:
            raise AxiomViolation(f"object {x} mapped out of range", x)
        if arr_map[dom.identity[x]] != cod.identity[obj_map[x]]:
            raise AxiomViolation(f"identity of object {x} not preserved", x)
    for f in dom.arrows():
        Ff = arr_map[f]
        if not 0 <= Ff < cod.n_arrows:
            raise AxiomViolation(f"arrow {f} mapped out of range", f)
        if cod.dom[Ff] != obj_map[dom.dom[f]] or cod.cod[Ff] != obj_map[dom.cod[f]]:
            raise AxiomViolation(f"arrow {f}: endpoints not preserved", f)
    for (g, f), h in dom.comp.items():
        if arr_map[h] != cod.comp[(arr_map[g], arr_map[f])]:
            raise AxiomViolation(f"composition not preserved at ({g},{f})", (g, f))
    return Functor(dom, cod, obj_map, arr_map)


def validate_nat_trans(F: Functor, G: Functor, components: Sequence[int]) -> NatTrans:
    components = tuple(components)
    if F.dom is not G.dom and F.dom != G.dom or F.cod is not G.cod and F.cod != G.cod:
        raise AxiomViolation("functors are not parallel", None)
    C, D = F.dom, F.cod
    if len(components) != C.n_objects:
        raise AxiomViolation("one component per object required", len(components))
    for x in C.objects():
        a = components[x]
        if not 0 <= a < D.n_arrows or D.dom[a] != F.obj_map[x] or D.cod[a] != G.obj_map[x]:
            raise AxiomViolation(f"component at {x} has wrong endpoints", x)
    for f in C.arrows():
        lhs = D.comp[(components[C.cod[f]], F.arr_map[f])]
        rhs = D.comp[(G.arr_map[f], components[C.dom[f]])]
        if lhs != rhs:
            raise AxiomViolation(f"naturality square fails at arrow {f}", f)
    return NatTrans(F, G, components)


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, tuple(C.objects()), tuple(C.arrows()))


def identity_nat_trans(F: Functor) -> NatTrans:
    return NatTrans(F, F, tuple(F.cod.identity[F.obj_map[x]] for x in F.dom.objects()))


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G ∘ F``."""
    return Functor(
        F.dom,
        G.cod,
        tuple(G.obj_map[y] for y in F.obj_map),
        tuple(G.arr_map[f] for f in F.arr_map),
    )


def vertical_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta · alpha`` for ``alpha: F => G``, ``beta: G => H``."""
    if alpha.cod.key() != beta.dom.key():
        raise NotComposable("transformations are not vertically composable", None)
    D = alpha.dom.cod
    return NatTrans(
        alpha.dom,
        beta.cod,
        tuple(D.comp[(beta.components[x], alpha.components[x])] for x in alpha.dom.dom.objects()),
    )


def whisker_left(H: Functor, alpha: NatTrans) -> NatTrans:
    """``H alpha``: components ``H(alpha_x)``."""
    return NatTrans(
        compose_functors(H, alpha.dom),
        compose_functors(H, alpha.cod),
        tuple(H.arr_map[a] for a in alpha.components),
    )


def whisker_right(beta: NatTrans, F: Functor) -> NatTrans:
    """``beta F``: components ``beta_{F x}``."""
    return NatTrans(
        compose_functors(beta.dom, F),
        compose_functors(beta.cod, F),
        tuple(beta.components[F.obj_map[x]] for x in F.dom.objects()),
    )


def horizontal_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta * alpha`` for ``alpha: F => G: C -> D`` and ``beta: H => K: D -> E``.

    Both textbook formulas ``beta_{G c} ∘ H(alpha_c)`` and
    ``K(alpha_c) ∘ beta_{F c}`` are evaluated and must agree.
    """
    F, G = alpha.dom, alpha.cod
    H, K = beta.dom, beta.cod
    if F.cod != H.dom:
        raise NotComposable("transformations are not horizontally composable", None)
    E = H.cod
    comps = []
    for c in F.dom.objects():
        a = alpha.components[c]
        first = E.comp[(beta.components[G.obj_map[c]], H.arr_map[a])]
        second = E.comp[(K.arr_map[a], beta.components[F.obj_map[c]])]
        if first != second:
            raise AxiomViolation(f"horizontal composition formulas disagree at object {c}", c)
        comps.append(first)
    return NatTrans(compose_functors(H, F), compose_functors(K, G), tuple(comps))


# ---------------------------------------------------------------------------
# products, arrow categories, pullbacks


def product_category(C: FinCat, D: FinCat) -> FinCat:
    """Objects ``(c, d)`` at ``c*|D_0| + d``; arrows ``(f, g)`` at ``f*|D_1| + g``."""
    n0, n1 = D.n_objects, D.n_arrows
    dom, cod = [], []
    for f in C.arrows():
        for g in D.arrows():
            dom.append(C.dom[f] * n0 + D.dom[g])
            cod.append(C.cod[f] * n0 + D.cod[g])
    identity = [C.identity[c] * n1 + D.identity[d] for c in C.objects() for d in D.objects()]
    comp = {}
    for (f2, f1), f in C.comp.items():
        for (g2, g1), g in D.comp.items():
            comp[(f2 * n1 + g2, f1 * n1 + g1)] = f * n1 + g
    obj_labels = [(C.obj_label(c), D.obj_label(d)) for c in C.objects() for d in D.objects()]
    arr_labels = [(C.arr_label(f), D.arr_label(g)) for f in C.arrows() for g in D.arrows()]
    return FinCat(C.n_objects * n0, tuple(dom), tuple(cod), tuple(identity), comp, tuple(obj_labels), tuple(arr_labels))


def arrow_category(C: FinCat) -> FinCat:
    """Objects are arrows of ``C``; a morphism ``p -> q`` is a commuting square ``(top, bottom)``."""
    squares = []
    for p in C.arrows():
        for q in C.arrows():
            for top in C.hom(C.dom[p], C.dom[q]):
                for bottom in C.hom(C.cod[p], C.cod[q]):
                    if C.comp[(q, top)] == C.comp[(bottom, p)]:
                        squares.append((p, q, top, bottom))
    index = {s: k for k, s in enumerate(squares)}
    identity = [index[(p, p, C.identity[C.dom[p]], C.identity[C.cod[p]])] for p in C.arrows()]
    comp = {}
    for s1 in squares:
        p, q, t1, b1 = s1
        for s2 in squares:
            if s2[0] != q:
                continue
            r, t2, b2 = s2[1], s2[2], s2[3]
            comp[(index[s2], index[s1])] = index[(p, r, C.comp[(t2, t1)], C.comp[(b2, b1)])]
    return FinCat(
        C.n_arrows,
        tuple(s[0] for s in squares),
        tuple(s[1] for s in squares),
        tuple(identity),
        comp,
        tuple(C.arr_label(f) for f in C.arrows()),
        tuple(squares),
    )


def strict_pullback(F: Functor, G: Functor) -> tuple[FinCat, Functor, Functor]:
    """Strict pullback of ``F: A -> C`` and ``G: B -> C`` with its two projections."""
    A, B = F.dom, G.dom
    if F.cod != G.cod:
        raise NotComposable("pullback needs a common codomain", None)
    objs = [(a, b) for a in A.objects() for b in B.objects() if F.obj_map[a] == G.obj_map[b]]
    arrs = [(f, g) for f in A.arrows() for g in B.arrows() if F.arr_map[f] == G.arr_map[g]]
    oidx = {o: k for k, o in enumerate(objs)}
    aidx = {a: k for k, a in enumerate(arrs)}
    dom = tuple(oidx[(A.dom[f], B.dom[g])] for f, g in arrs)
    cod = tuple(oidx[(A.cod[f], B.cod[g])] for f, g in arrs)
    identity = tuple(aidx[(A.identity[a], B.identity[b])] for a, b in objs)
    comp = {}
    for k1, (f1, g1) in enumerate(arrs):
        for k2, (f2, g2) in enumerate(arrs):
            if A.cod[f1] == A.dom[f2] and B.cod[g1] == B.dom[g2]:
                comp[(k2, k1)] = aidx[(A.comp[(f2, f1)], B.comp[(g2, g1)])]
    P = FinCat(len(objs), dom, cod, identity, comp, tuple(objs), tuple(arrs))
    p1 = Functor(P, A, tuple(a for a, _ in objs), tuple(f for f, _ in arrs))
    p2 = Functor(P, B, tuple(b for _, b in objs), tuple(g for _, g in arrs))
    return P, p1, p2


def subcategory(C: FinCat, objects: Sequence[int], arrows: Sequence[int]) -> tuple[FinCat, Functor]:
    """Full-data subcategory on the given objects/arrows, with its inclusion."""
    objs = sorted(set(objects))
    arrs = sorted(set(arrows))
    oidx = {o: k for k, o in enumerate(objs)}
    aidx = {a: k for k, a in enumerate(arrs)}
    for f in arrs:
        if C.dom[f] not in oidx or C.cod[f] not in oidx:
            raise AxiomViolation(f"arrow {f} has an endpoint outside the subcategory", f)
    for o in objs:
        if C.identity[o] not in aidx:
            raise AxiomViolation(f"identity of object {o} missing from subcategory", o)
    comp = {}
    for g in arrs:
        for f in arrs:
            if C.cod[f] == C.dom[g]:
                h = C.comp[(g, f)]
                if h not in aidx:
                    raise AxiomViolation(f"subcategory not closed under composition at ({g},{f})", (g, f))
                comp[(aidx[g], aidx[f])] = aidx[h]
    S = FinCat(
        len(objs),
        tuple(oidx[C.dom[f]] for f in arrs),
        tuple(oidx[C.cod[f]] for f in arrs),
        tuple(aidx[C.identity[o]] for o in objs),
        comp,
        tuple(C.obj_label(o) for o in objs),
        tuple(C.arr_label(f) for f in arrs),
    )
    return S, Functor(S, C, tuple(objs), tuple(arrs))


# ---------------------------------------------------------------------------
# enumeration


class _Budget:
    def __init__(self, limit: int, what: str):
        self.limit = limit
        self.count = 0
        self.what = what

    def tick(self) -> None:
        self.count += 1
        if self.count > self.limit:
            raise SizeBoundExceeded(f"{self.what}: search exceeded {self.limit} nodes", (self.what, self.limit))


def enumerate_functors(
    C: FinCat,
    D: FinCat,
    bounds: Bounds = DEFAULT_BOUNDS,
    obj_candidates: Callable[[int], Sequence[int]] | None = None,
) -> list[Functor]:
    """All functors ``C -> D`` in lexicographic order of ``(obj_map, arr_map)``.

    Backtracking over objects and arrows; an arrow is assigned as soon as
    both endpoints are, and every composition constraint is checked the
    moment all three of its arrows are assigned.
    """
    check_bound(C.n_arrows * D.n_arrows, bounds.max_functor_candidates, "|C_1|*|D_1|")
    budget = _Budget(bounds.max_functor_candidates, "enumerate_functors")
    if C.n_objects == 0:
        return [Functor(C, D, (), ())]
    # step order: object x, then all arrows among objects 0..x
    steps: list[tuple[str, int]] = []
    placed_arrows: set[int] = set()
    for x in C.objects():
        steps.append(("o", x))
        for f in C.arrows():
            if f not in placed_arrows and max(C.dom[f], C.cod[f]) == x:
                placed_arrows.add(f)
                steps.append(("a", f))
    arrow_pos = {f: k for k, (kind, f) in enumerate(steps) if kind == "a"}
    checks_at: dict[int, list[tuple[int, int, int]]] = {}
    for (g, f), h in C.comp.items():
        if C.is_identity(g) or C.is_identity(f):
            continue
        pos = max(arrow_pos[g], arrow_pos[f], arrow_pos[h])
        checks_at.setdefault(pos, []).append((g, f, h))

    obj_map = [0] * C.n_objects
    arr_map = [0] * C.n_arrows
    out: list[Functor] = []

    def rec(k: int) -> None:
        budget.tick()
        if k == len(steps):
            out.append(Functor(C, D, tuple(obj_map), tuple(arr_map)))
            return
        kind, v = steps[k]
        if kind == "o":
            cands = obj_candidates(v) if obj_candidates is not None else D.objects()
            for y in cands:
                obj_map[v] = y
                rec(k + 1)
            return
        if C.is_identity(v):
            cands: Sequence[int] = (D.identity[obj_map[C.dom[v]]],)
        else:
            cands = D.hom(obj_map[C.dom[v]], obj_map[C.cod[v]])
        for a in cands:
            arr_map[v] = a
            if all(arr_map[h] == D.comp[(arr_map[g], arr_map[f])] for g, f, h in checks_at.get(k, ())):
                rec(k + 1)

    rec(0)
    return out


def enumerate_nat_trans(
    F: Functor,
    G: Functor,
    bounds: Bounds = DEFAULT_BOUNDS,
    component_ok: Callable[[int, int], bool] | None = None,
) -> list[NatTrans]:
    """All natural transformations ``F => G`` in lexicographic component order."""
    C, D = F.dom, F.cod
    budget = _Budget(bounds.max_functor_candidates, "enumerate_nat_trans")
    comps = [0] * C.n_objects
    checks_at: dict[int, list[int]] = {}
    for f in C.arrows():
        checks_at.setdefault(max(C.dom[f], C.cod[f]), []).append(f)
    out: list[NatTrans] = []

    def rec(x: int) -> None:
        budget.tick()
        if x == C.n_objects:
            out.append(NatTrans(F, G, tuple(comps)))
            return
        for a in D.hom(F.obj_map[x], G.obj_map[x]):
            if component_ok is not None and not component_ok(x, a):
                continue
            comps[x] = a
            if all(
                D.comp[(comps[C.cod[f]], F.arr_map[f])] == D.comp[(G.arr_map[f], comps[C.dom[f]])]
                for f in checks_at.get(x, ())
            ):
                rec(x + 1)

    rec(0)
    return out


def functor_category(C: FinCat, D: FinCat, bounds: Bounds = DEFAULT_BOUNDS) -> tuple[FinCat, list[Functor], list[NatTrans]]:
    """``Cat(C, D)`` with its objects and arrows as python values."""
    functors = enumerate_functors(C, D, bounds)
    index = {F.key(): k for k, F in enumerate(functors)}
    trans: list[NatTrans] = []
    for F in functors:
        for G in functors:
            trans.extend(enumerate_nat_trans(F, G, bounds))
    return _category_from_cells(functors, trans, index), functors, trans


def _category_from_cells(objects: list[Functor], trans: list[NatTrans], index: dict) -> FinCat:
    tidx = {t.key(): k for k, t in enumerate(trans)}
    dom = tuple(index[t.dom.key()] for t in trans)
    cod = tuple(index[t.cod.key()] for t in trans)
    identity = tuple(tidx[identity_nat_trans(F).key()] for F in objects)
    by_dom: dict[int, list[int]] = {}
    for k in range(len(trans)):
        by_dom.setdefault(dom[k], []).append(k)
    comp = {}
    for k1, t1 in enumerate(trans):
        for k2 in by_dom.get(cod[k1], ()):
            comp[(k2, k1)] = tidx[vertical_compose(trans[k2], t1).key()]
    return FinCat(len(objects), dom, cod, identity, comp, tuple(F.key() for F in objects), tuple(t.key() for t in trans))


def category_of(objects: list[Functor], trans: list[NatTrans]) -> FinCat:
    """Category with the given functors as objects and transformations as arrows.

    The arrow set must contain identities and be closed under vertical
    composition.
    """
    return _category_from_cells(objects, trans, {F.key(): k for k, F in enumerate(objects)})


def is_iso_of_categories(F: Functor) -> tuple[bool, Functor | None]:
    """Whether ``F`` is bijective on objects and arrows; returns the inverse when it is."""
    C, D = F.dom, F.cod
    if C.n_objects != D.n_objects or C.n_arrows != D.n_arrows:
        return False, None
    if len(set(F.obj_map)) != C.n_objects or len(set(F.arr_map)) != C.n_arrows:
        return False, None
    inv_obj = [0] * D.n_objects
    for x, y in enumerate(F.obj_map):
        inv_obj[y] = x
    inv_arr = [0] * D.n_arrows
    for f, g in enumerate(F.arr_map):
        inv_arr[g] = f
    return True, Functor(D, C, tuple(inv_obj), tuple(inv_arr))


def functor_defects(F: Functor) -> dict[str, object]:
    """Witnesses for the four iso ingredients; an empty value means the property holds."""
    C, D = F.dom, F.cod
    seen: dict[int, int] = {}
    inj = None
    for x, y in enumerate(F.obj_map):
        if y in seen:
            inj = (seen[y], x)
            break
        seen[y] = x
    missing = [y for y in D.objects() if y not in set(F.obj_map)]
    faithful = None
    full = None
    for a in C.objects():
        for b in C.objects():
            images: dict[int, int] = {}
            for f in C.hom(a, b):
                g = F.arr_map[f]
                if g in images and faithful is None:
                    faithful = (images[g], f)
                images[g] = f
            if full is None:
                for g in D.hom(F.obj_map[a], F.obj_map[b]):
                    if g not in images:
                        full = (a, b, g)
                        break
    return {
        "injective_on_objects": inj,
        "surjective_on_objects": missing[0] if missing else None,
        "faithful": faithful,
        "full": full,
    }


# ---------------------------------------------------------------------------
# strict 2-categories


@dataclass(frozen=True, eq=False)
class TwoCat:
    """Strict 2-category with one hom-category per ordered pair of objects.

    ``compose[(a, b, c)]`` is a functor ``hom(b, c) × hom(a, b) -> hom(a, c)``
    on :func:`product_category` indexing; ``identity[a]`` is an object of
    ``hom(a, a)``.
    """

    n_objects: int
    hom: Mapping[tuple[int, int], FinCat]
    compose: Mapping[tuple[int, int, int], Functor]
    identity: tuple[int, ...]
    obj_labels: tuple | None = None

    def objects(self) -> range:
        return range(self.n_objects)

    def compose1(self, a: int, b: int, c: int, g: int, f: int) -> int:
        """Composite of 1-cells ``f: a -> b`` and ``g: b -> c``."""
        n = self.hom[(a, b)].n_objects
        return self.compose[(a, b, c)].obj_map[g * n + f]

    def compose2(self, a: int, b: int, c: int, beta: int, alpha: int) -> int:
        """Horizontal composite ``beta * alpha`` of 2-cells."""
        n = self.hom[(a, b)].n_arrows
        return self.compose[(a, b, c)].arr_map[beta * n + alpha]

    def underlying_arrows(self) -> list[tuple[int, int, int]]:
        return [(a, b, f) for a in self.objects() for b in self.objects() for f in self.hom[(a, b)].objects()]


def validate_two_cat(
    n_objects: int,
    hom: Mapping[tuple[int, int], FinCat],
    compose: Mapping[tuple[int, int, int], Functor],
    identity: Sequence[int],
    obj_labels: Sequence | None = None,
) -> TwoCat:
    for a in range(n_objects):
        for b in range(n_objects):
            if (a, b) not in hom:
                raise AxiomViolation(f"missing hom-category ({a},{b})", (a, b))
            H = hom[(a, b)]
            validate_category(H.n_objects, H.dom, H.cod, H.identity, H.comp)
    for a in range(n_objects):
        for b in range(n_objects):
            for c in range(n_objects):
                K = compose.get((a, b, c))
                if K is None:
                    raise AxiomViolation(f"missing composition functor ({a},{b},{c})", (a, b, c))
                P = product_category(hom[(b, c)], hom[(a, b)])
                try:
                    validate_functor(P, hom[(a, c)], K.obj_map, K.arr_map)
                except AxiomViolation as exc:
                    raise AxiomViolation(f"composition ({a},{b},{c}) is not a functor (interchange): {exc}", (a, b, c, exc.witness)) from exc
    T = TwoCat(n_objects, dict(hom), dict(compose), tuple(identity), tuple(obj_labels) if obj_labels is not None else None)
    for a in range(n_objects):
        for b in range(n_objects):
            H = hom[(a, b)]
            ida, idb = T.identity[a], T.identity[b]
            Ia = hom[(a, a)].identity[ida]
            Ib = hom[(b, b)].identity[idb]
            for f in H.objects():
                if T.compose1(a, b, b, idb, f) != f or T.compose1(a, a, b, f, ida) != f:
                    raise AxiomViolation(f"unit law fails for 1-cell {f} in hom({a},{b})", (a, b, f))
            for al in H.arrows():
                if T.compose2(a, b, b, Ib, al) != al or T.compose2(a, a, b, al, Ia) != al:
                    raise AxiomViolation(f"unit law fails for 2-cell {al} in hom({a},{b})", (a, b, al))
    for a, b, c, d in itertools.product(range(n_objects), repeat=4):
        Hab, Hbc, Hcd = hom[(a, b)], hom[(b, c)], hom[(c, d)]
        for f in Hab.objects():
            for g in Hbc.objects():
                gf = T.compose1(a, b, c, g, f)
                for h in Hcd.objects():
                    if T.compose1(a, c, d, h, gf) != T.compose1(a, b, d, T.compose1(b, c, d, h, g), f):
                        raise AxiomViolation(f"associativity fails for 1-cells ({h},{g},{f})", (a, b, c, d, h, g, f))
        for al in Hab.arrows():
            for be in Hbc.arrows():
                ba = T.compose2(a, b, c, be, al)
                for ga in Hcd.arrows():
                    if T.compose2(a, c, d, ga, ba) != T.compose2(a, b, d, T.compose2(b, c, d, ga, be), al):
                        raise AxiomViolation(f"associativity fails for 2-cells ({ga},{be},{al})", (a, b, c, d, ga, be, al))
    return T


def locally_discrete(C: FinCat) -> TwoCat:
    """View ``C`` as a 2-category with only identity 2-cells."""
    hom, index = {}, {}
    for a in C.objects():
        for b in C.objects():
            arrows = C.hom(a, b)
            hom[(a, b)] = discrete_category(len(arrows), labels=list(arrows))
            index[(a, b)] = {f: k for k, f in enumerate(arrows)}
    compose = {}
    for a in C.objects():
        for b in C.objects():
            for c in C.objects():
                Hab, Hbc = C.hom(a, b), C.hom(b, c)
                omap = tuple(index[(a, c)][C.comp[(g, f)]] for g in Hbc for f in Hab)
                P = product_category(hom[(b, c)], hom[(a, b)])
                compose[(a, b, c)] = Functor(P, hom[(a, c)], omap, omap)
    identity = tuple(index[(a, a)][C.identity[a]] for a in C.objects())
    return validate_two_cat(C.n_objects, hom, compose, identity, C.obj_labels)


@dataclass(frozen=True, eq=False)
class TwoFunctor:
    dom: TwoCat
    cod: TwoCat
    obj_map: tuple[int, ...]
    hom_functors: Mapping[tuple[int, int], Functor]


def validate_two_functor(dom: TwoCat, cod: TwoCat, obj_map: Sequence[int], hom_functors: Mapping[tuple[int, int], Functor]) -> TwoFunctor:
    obj_map = tuple(obj_map)
    for a in dom.objects():
        for b in dom.objects():
            Fab = hom_functors[(a, b)]
            validate_functor(dom.hom[(a, b)], cod.hom[(obj_map[a], obj_map[b])], Fab.obj_map, Fab.arr_map)
    for a in dom.objects():
        if hom_functors[(a, a)].obj_map[dom.identity[a]] != cod.identity[obj_map[a]]:
            raise AxiomViolation(f"identity 1-cell of object {a} not preserved", a)
    for a, b, c in itertools.product(dom.objects(), repeat=3):
        Fa, Fb, Fc = obj_map[a], obj_map[b], obj_map[c]
        Fab, Fbc, Fac = hom_functors[(a, b)], hom_functors[(b, c)], hom_functors[(a, c)]
        for f in dom.hom[(a, b)].objects():
            for g in dom.hom[(b, c)].objects():
                lhs = Fac.obj_map[dom.compose1(a, b, c, g, f)]
                rhs = cod.compose1(Fa, Fb, Fc, Fbc.obj_map[g], Fab.obj_map[f])
                if lhs != rhs:
                    raise AxiomViolation(f"composition of 1-cells not preserved at ({g},{f})", (a, b, c, g, f))
        for al in dom.hom[(a, b)].arrows():
            for be in dom.hom[(b, c)].arrows():
                lhs = Fac.arr_map[dom.compose2(a, b, c, be, al)]
                rhs = cod.compose2(Fa, Fb, Fc, Fbc.arr_map[be], Fab.arr_map[al])
                if lhs != rhs:
                    raise AxiomViolation(f"horizontal composition not preserved at ({be},{al})", (a, b, c, be, al))
    return TwoFunctor(dom, cod, obj_map, dict(hom_functors))


@dataclass(frozen=True, eq=False)
class TwoNatTrans:
    dom: TwoFunctor
    cod: TwoFunctor
    components: tuple[int, ...]


def validate_two_nat_trans(F: TwoFunctor, G: TwoFunctor, components: Sequence[int]) -> TwoNatTrans:
    """Component ``components[a]`` is a 1-cell ``F a -> G a`` of the codomain."""
    A, B = F.dom, F.cod
    components = tuple(components)
    for a in A.objects():
        if not 0 <= components[a] < B.hom[(F.obj_map[a], G.obj_map[a])].n_objects:
            raise AxiomViolation(f"component at {a} out of range", a)
    for a in A.objects():
        for b in A.objects():
            Fa, Fb, Ga, Gb = F.obj_map[a], F.obj_map[b], G.obj_map[a], G.obj_map[b]
            for f in A.hom[(a, b)].objects():
                lhs = B.compose1(Fa, Ga, Gb, G.hom_functors[(a, b)].obj_map[f], components[a])
                rhs = B.compose1(Fa, Fb, Gb, components[b], F.hom_functors[(a, b)].obj_map[f])
                if lhs != rhs:
                    raise AxiomViolation(f"1-naturality fails at 1-cell {f}: {a}->{b}", (a, b, f))
            id_ta = B.hom[(Fa, Ga)].identity[components[a]]
            id_tb = B.hom[(Fb, Gb)].identity[components[b]]
            for al in A.hom[(a, b)].arrows():
                lhs = B.compose2(Fa, Ga, Gb, G.hom_functors[(a, b)].arr_map[al], id_ta)
                rhs = B.compose2(Fa, Fb, Gb, id_tb, F.hom_functors[(a, b)].arr_map[al])
                if lhs != rhs:
                    raise AxiomViolation(f"2-natural compatibility fails at 2-cell {al}: {a}->{b}", (a, b, al))
    return TwoNatTrans(F, G, components)


# ---------------------------------------------------------------------------
# Cat-valued contravariant 2-functors, their 2-natural transformations and
# modifications


@dataclass(frozen=True, eq=False)
class CatPresheaf:
    """A 2-functor ``site^op -> Cat`` in tabulated form.

    ``on_1cells[(a, b, f)]`` is the functor ``F(b) -> F(a)`` for the 1-cell
    ``f`` (an object of ``site.hom[(a, b)]``); ``on_2cells[(a, b, alpha)]`` is
    the transformation ``F(dom alpha) => F(cod alpha)``.  Only 1-cells are
    reversed.
    """

    site: TwoCat
    cats: tuple[FinCat, ...]
    on_1cells: Mapping[tuple[int, int, int], Functor]
    on_2cells: Mapping[tuple[int, int, int], NatTrans]

    def restrict(self, a: int, b: int, f: int) -> Functor:
        return self.on_1cells[(a, b, f)]


def validate_cat_presheaf(
    site: TwoCat,
    cats: Sequence[FinCat],
    on_1cells: Mapping[tuple[int, int, int], Functor],
    on_2cells: Mapping[tuple[int, int, int], NatTrans],
) -> CatPresheaf:
    cats = tuple(cats)
    if len(cats) != site.n_objects:
        raise AxiomViolation("one category per site object required", len(cats))
    for a in site.objects():
        for b in site.objects():
            H = site.hom[(a, b)]
            for f in H.objects():
                Ff = on_1cells.get((a, b, f))
                if Ff is None:
                    raise AxiomViolation(f"missing functor for 1-cell {(a, b, f)}", (a, b, f))
                validate_functor(cats[b], cats[a], Ff.obj_map, Ff.arr_map)
            for al in H.arrows():
                Fal = on_2cells.get((a, b, al))
                if Fal is None:
                    raise AxiomViolation(f"missing transformation for 2-cell {(a, b, al)}", (a, b, al))
                validate_nat_trans(on_1cells[(a, b, H.dom[al])], on_1cells[(a, b, H.cod[al])], Fal.components)
                if H.is_identity(al) and Fal != identity_nat_trans(on_1cells[(a, b, H.dom[al])]):
                    raise AxiomViolation(f"identity 2-cell {(a, b, al)} not sent to an identity", (a, b, al))
            for (be, al), ga in H.comp.items():
                if on_2cells[(a, b, ga)] != vertical_compose(on_2cells[(a, b, be)], on_2cells[(a, b, al)]):
                    raise AxiomViolation(f"vertical composition not preserved at {(a, b, be, al)}", (a, b, be, al))
        if on_1cells[(a, a, site.identity[a])] != identity_functor(cats[a]):
            raise AxiomViolation(f"identity 1-cell of {a} not sent to the identity functor", a)
    for a, b, c in itertools.product(site.objects(), repeat=3):
        Hab, Hbc = site.hom[(a, b)], site.hom[(b, c)]
        for f in Hab.objects():
            for g in Hbc.objects():
                gf = site.compose1(a, b, c, g, f)
                if on_1cells[(a, c, gf)] != compose_functors(on_1cells[(a, b, f)], on_1cells[(b, c, g)]):
                    raise AxiomViolation(f"composite 1-cell {(a, b, c, g, f)} not preserved", (a, b, c, g, f))
        for al in Hab.arrows():
            for be in Hbc.arrows():
                ba = site.compose2(a, b, c, be, al)
                expected = horizontal_compose(on_2cells[(a, b, al)], on_2cells[(b, c, be)])
                if on_2cells[(a, c, ba)].components != expected.components:
                    raise AxiomViolation(f"horizontal composite {(a, b, c, be, al)} not preserved", (a, b, c, be, al))
    return CatPresheaf(site, cats, dict(on_1cells), dict(on_2cells))


@dataclass(frozen=True, eq=False)
class PresheafMap:
    """2-natural transformation between Cat-valued 2-functors; one functor per object."""

    dom: CatPresheaf
    cod: CatPresheaf
    components: tuple[Functor, ...]

    def key(self) -> tuple:
        return tuple(c.key() for c in self.components)


def presheaf_map_defect(F: CatPresheaf, G: CatPresheaf, components: Sequence[Functor], pairs=None):
    """First failing naturality or 2-compatibility instance, or ``None``.

    ``pairs`` restricts the check to the given ``(a, b)`` site pairs.
    """
    site = F.site
    if pairs is None:
        pairs = [(a, b) for a in site.objects() for b in site.objects()]
    for a, b in pairs:
        ta, tb = components[a], components[b]
        H = site.hom[(a, b)]
        for f in H.objects():
            Gf, Ff = G.on_1cells[(a, b, f)], F.on_1cells[(a, b, f)]
            for x in F.cats[b].objects():
                if Gf.obj_map[tb.obj_map[x]] != ta.obj_map[Ff.obj_map[x]]:
                    return ("naturality", (a, b, f), ("object", x))
            for m in F.cats[b].arrows():
                if Gf.arr_map[tb.arr_map[m]] != ta.arr_map[Ff.arr_map[m]]:
                    return ("naturality", (a, b, f), ("arrow", m))
        for al in H.arrows():
            Gal, Fal = G.on_2cells[(a, b, al)], F.on_2cells[(a, b, al)]
            for x in F.cats[b].objects():
                if Gal.components[tb.obj_map[x]] != ta.arr_map[Fal.components[x]]:
                    return ("2-compatibility", (a, b, al), ("object", x))
    return None


def validate_presheaf_map(F: CatPresheaf, G: CatPresheaf, components: Sequence[Functor]) -> PresheafMap:
    components = tuple(components)
    for a in F.site.objects():
        t = components[a]
        validate_functor(F.cats[a], G.cats[a], t.obj_map, t.arr_map)
    defect = presheaf_map_defect(F, G, components)
    if defect is not None:
        raise AxiomViolation(f"not 2-natural: {defect[0]} fails at {defect[1]}", defect)
    return PresheafMap(F, G, components)


@dataclass(frozen=True, eq=False)
class Modification:
    dom: PresheafMap
    cod: PresheafMap
    components: tuple[NatTrans, ...]

    def key(self) -> tuple:
        return (self.dom.key(), self.cod.key(), tuple(m.components for m in self.components))


def _modification_defect(theta: PresheafMap, components: Sequence[NatTrans], pairs) -> tuple | None:
    F, G = theta.dom, theta.cod
    for a, b in pairs:
        ma, mb = components[a], components[b]
        for f in F.site.hom[(a, b)].objects():
            Gf, Ff = G.on_1cells[(a, b, f)], F.on_1cells[(a, b, f)]
            for x in F.cats[b].objects():
                if Gf.arr_map[mb.components[x]] != ma.components[Ff.obj_map[x]]:
                    return ((a, b, f), x)
    return None


def validate_modification(theta: PresheafMap, gamma: PresheafMap, components: Sequence[NatTrans]) -> Modification:
    components = tuple(components)
    for a in theta.dom.site.objects():
        validate_nat_trans(theta.components[a], gamma.components[a], components[a].components)
    pairs = [(a, b) for a in theta.dom.site.objects() for b in theta.dom.site.objects()]
    defect = _modification_defect(theta, components, pairs)
    if defect is not None:
        raise AxiomViolation(f"modification condition fails at {defect}", defect)
    return Modification(theta, gamma, components)


def _pairs_up_to(k: int) -> dict[int, list[tuple[int, int]]]:
    return {b: [(a, b) for a in range(b + 1)] + [(b, a) for a in range(b)] for b in range(k)}


def enumerate_presheaf_maps(F: CatPresheaf, G: CatPresheaf, bounds: Bounds = DEFAULT_BOUNDS) -> list[PresheafMap]:
    """Every 2-natural transformation ``F => G`` (backtracking over site objects)."""
    site = F.site
    n = site.n_objects
    candidates = [enumerate_functors(F.cats[a], G.cats[a], bounds) for a in site.objects()]
    pairs_at = _pairs_up_to(n)
    budget = _Budget(bounds.max_functor_candidates, "enumerate_presheaf_maps")
    chosen: list[Functor] = []
    out: list[PresheafMap] = []

    def rec(a: int) -> None:
        budget.tick()
        if a == n:
            out.append(PresheafMap(F, G, tuple(chosen)))
            return
        for t in candidates[a]:
            chosen.append(t)
            if presheaf_map_defect(F, G, chosen, pairs_at[a]) is None:
                rec(a + 1)
            chosen.pop()

    rec(0)
    return out


def enumerate_modifications(theta: PresheafMap, gamma: PresheafMap, bounds: Bounds = DEFAULT_BOUNDS) -> list[Modification]:
    site = theta.dom.site
    n = site.n_objects
    candidates = [enumerate_nat_trans(theta.components[a], gamma.components[a], bounds) for a in site.objects()]
    pairs_at = _pairs_up_to(n)
    chosen: list[NatTrans] = []
    out: list[Modification] = []

    def rec(a: int) -> None:
        if a == n:
            out.append(Modification(theta, gamma, tuple(chosen)))
            return
        for m in candidates[a]:
            chosen.append(m)
            if _modification_defect(theta, chosen, pairs_at[a]) is None:
                rec(a + 1)
            chosen.pop()

    rec(0)
    return out


def vertical_compose_modifications(n: Modification, m: Modification) -> Modification:
    return Modification(m.dom, n.cod, tuple(vertical_compose(b, a) for b, a in zip(n.components, m.components)))


def identity_modification(theta: PresheafMap) -> Modification:
    return Modification(theta, theta, tuple(identity_nat_trans(t) for t in theta.components))


@dataclass(frozen=True, eq=False)
class TransformationCategory:
    """``[site^op, Cat](P, F)``: 2-natural transformations and modifications."""

    category: FinCat
    transformations: list[PresheafMap]
    modifications: list[Modification]

    def object_index(self, theta: PresheafMap) -> int:
        return self.category.obj_index(theta.key())

    def arrow_index(self, m: Modification) -> int:
        return self.category.arr_index(m.key())


def transformation_category(P: CatPresheaf, F: CatPresheaf, bounds: Bounds = DEFAULT_BOUNDS) -> TransformationCategory:
    thetas = enumerate_presheaf_maps(P, F, bounds)
    mods: list[Modification] = []
    for th in thetas:
        for ga in thetas:
            mods.extend(enumerate_modifications(th, ga, bounds))
    oidx = {t.key(): k for k, t in enumerate(thetas)}
    midx = {m.key(): k for k, m in enumerate(mods)}
    dom = tuple(oidx[m.dom.key()] for m in mods)
    cod = tuple(oidx[m.cod.key()] for m in mods)
    identity = tuple(midx[identity_modification(t).key()] for t in thetas)
    by_dom: dict[int, list[int]] = {}
    for k in range(len(mods)):
        by_dom.setdefault(dom[k], []).append(k)
    comp = {}
    for k1, m1 in enumerate(mods):
        for k2 in by_dom.get(cod[k1], ()):
            comp[(k2, k1)] = midx[vertical_compose_modifications(mods[k2], m1).key()]
    C = FinCat(len(thetas), dom, cod, identity, comp, tuple(oidx), tuple(midx))
    return TransformationCategory(C, thetas, mods)

"""Sieves, the atomic topology and the 2-sheaf condition on a strict 2-category site.

Presheaves are :class:`~elmendorf2.catkit.CatPresheaf` values on the
site's :class:`~elmendorf2.catkit.TwoCat`.  A sieve on ``c`` is a
sub-presheaf of the representable ``y c`` given by subcategories of the
hom-categories ``hom(d, c)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .bounds import DEFAULT_BOUNDS, Bounds
from .catkit import (
    CatPresheaf,
    FinCat,
    Functor,
    NatTrans,
    PresheafMap,
    TwoCat,
    compose_functors,
    discrete_category,
    functor_defects,
    identity_functor,
    identity_nat_trans,
    is_iso_of_categories,
    subcategory,
    terminal_category,
    transformation_category,
    validate_cat_presheaf,
    validate_functor,
    whisker_right,
)
from .errors import AxiomViolation

Presheaf2 = CatPresheaf


def representable(T: TwoCat, c: int) -> CatPresheaf:
    """``y c``: ``d -> hom(d, c)``, a 1-cell ``k`` acts by ``f -> f∘k`` and a 2-cell ``β`` by ``1_f * β``."""
    on1, on2 = {}, {}
    for d, e in itertools.product(T.objects(), repeat=2):
        Hde, Hec, Hdc = T.hom[(d, e)], T.hom[(e, c)], T.hom[(d, c)]
        for k in Hde.objects():
            idk = Hde.identity[k]
            on1[(d, e, k)] = Functor(
                Hec,
                Hdc,
                tuple(T.compose1(d, e, c, f, k) for f in Hec.objects()),
                tuple(T.compose2(d, e, c, phi, idk) for phi in Hec.arrows()),
            )
        for beta in Hde.arrows():
            on2[(d, e, beta)] = NatTrans(
                on1[(d, e, Hde.dom[beta])],
                on1[(d, e, Hde.cod[beta])],
                tuple(T.compose2(d, e, c, Hec.identity[f], beta) for f in Hec.objects()),
            )
    return validate_cat_presheaf(T, [T.hom[(d, c)] for d in T.objects()], on1, on2)


def constant_presheaf(T: TwoCat, C: FinCat) -> CatPresheaf:
    on1 = {(a, b, f): identity_functor(C) for a, b in itertools.product(T.objects(), repeat=2) for f in T.hom[(a, b)].objects()}
    on2 = {
        (a, b, al): identity_nat_trans(identity_functor(C))
        for a, b in itertools.product(T.objects(), repeat=2)
        for al in T.hom[(a, b)].arrows()
    }
    return validate_cat_presheaf(T, [C] * T.n_objects, on1, on2)


def terminal_presheaf(T: TwoCat) -> CatPresheaf:
    return constant_presheaf(T, terminal_category())


# ---------------------------------------------------------------------------
# sieves


@dataclass(frozen=True, eq=False)
class Sieve2:
    """Sieve on ``target``; ``objects[d]``/``arrows[d]`` are index sets in ``hom(d, target)``."""

    site: TwoCat
    target: int
    objects: tuple[frozenset[int], ...]
    arrows: tuple[frozenset[int], ...]
    presheaf: CatPresheaf
    inclusion: PresheafMap

    def key(self) -> tuple:
        return (self.target, tuple(tuple(sorted(s)) for s in self.objects), tuple(tuple(sorted(s)) for s in self.arrows))

    def is_empty(self) -> bool:
        return not any(self.objects)


def make_sieve(T: TwoCat, c: int, objects: Sequence[Sequence[int]], arrows: Sequence[Sequence[int]]) -> Sieve2:
    """Validate closure and build the sub-presheaf of ``y c`` with its inclusion."""
    y = representable(T, c)
    objs = tuple(frozenset(o) for o in objects)
    arrs = tuple(frozenset(a) for a in arrows)
    for d in T.objects():
        H = T.hom[(d, c)]
        if not (objs[d] <= set(H.objects()) and arrs[d] <= set(H.arrows())):
            raise AxiomViolation(f"sieve entries at {d} are not cells of hom({d}, {c})", d)
    cats, incs = [], []
    for d in T.objects():
        S, inc = subcategory(T.hom[(d, c)], objs[d], arrs[d])
        cats.append(S)
        incs.append(inc)
    oidx = [{x: k for k, x in enumerate(inc.obj_map)} for inc in incs]
    aidx = [{x: k for k, x in enumerate(inc.arr_map)} for inc in incs]
    on1, on2 = {}, {}
    for d, e in itertools.product(T.objects(), repeat=2):
        Hde = T.hom[(d, e)]
        for k in Hde.objects():
            Y = y.on_1cells[(d, e, k)]
            try:
                on1[(d, e, k)] = Functor(
                    cats[e],
                    cats[d],
                    tuple(oidx[d][Y.obj_map[f]] for f in incs[e].obj_map),
                    tuple(aidx[d][Y.arr_map[p]] for p in incs[e].arr_map),
                )
            except KeyError as exc:
                raise AxiomViolation(f"sieve not closed under precomposition with 1-cell {(d, e, k)}", (d, e, k)) from exc
        for beta in Hde.arrows():
            Y = y.on_2cells[(d, e, beta)]
            try:
                comps = tuple(aidx[d][Y.components[f]] for f in incs[e].obj_map)
            except KeyError as exc:
                raise AxiomViolation(f"sieve not closed under whiskering with 2-cell {(d, e, beta)}", (d, e, beta)) from exc
            on2[(d, e, beta)] = NatTrans(on1[(d, e, Hde.dom[beta])], on1[(d, e, Hde.cod[beta])], comps)
    P = validate_cat_presheaf(T, cats, on1, on2)
    inclusion = PresheafMap(P, y, tuple(incs))
    for d in T.objects():
        validate_functor(incs[d].dom, incs[d].cod, incs[d].obj_map, incs[d].arr_map)
        if len(set(incs[d].obj_map)) != len(incs[d].obj_map) or len(set(incs[d].arr_map)) != len(incs[d].arr_map):
            raise AxiomViolation(f"sieve inclusion at {d} is not injective", d)
    return Sieve2(T, c, objs, arrs, P, inclusion)


def generated_sieve(T: TwoCat, d0: int, c: int, f: int) -> Sieve2:
    """Sieve generated by the 1-cell ``f: d0 -> c``: objects ``f∘k``, arrows ``1_f * β``."""
    idf = T.hom[(d0, c)].identity[f]
    objects, arrows = [], []
    for b in T.objects():
        H = T.hom[(b, d0)]
        objects.append({T.compose1(b, d0, c, f, k) for k in H.objects()})
        arrows.append({T.compose2(b, d0, c, idf, beta) for beta in H.arrows()})
    return make_sieve(T, c, objects, arrows)


def sieve_closure(T: TwoCat, c: int, seeds: Sequence[tuple[int, int]]) -> tuple[list[set[int]], list[set[int]]]:
    """Smallest family closed under precomposition, whiskering, identities and composition containing the seeds ``(d, f)``."""
    objs: list[set[int]] = [set() for _ in T.objects()]
    arrs: list[set[int]] = [set() for _ in T.objects()]
    for d, f in seeds:
        objs[d].add(f)
    changed = True
    while changed:
        changed = False

        def add(store, d, x):
            nonlocal changed
            if x not in store[d]:
                store[d].add(x)
                changed = True

        for e in T.objects():
            Hec = T.hom[(e, c)]
            for f in list(objs[e]):
                add(arrs, e, Hec.identity[f])
            for (q, p), r in Hec.comp.items():
                if q in arrs[e] and p in arrs[e]:
                    add(arrs, e, r)
            for d in T.objects():
                Hde = T.hom[(d, e)]
                for k in Hde.objects():
                    for f in list(objs[e]):
                        add(objs, d, T.compose1(d, e, c, f, k))
                    for p in list(arrs[e]):
                        add(arrs, d, T.compose2(d, e, c, p, Hde.identity[k]))
                for beta in Hde.arrows():
                    for f in list(objs[e]):
                        add(arrs, d, T.compose2(d, e, c, Hec.identity[f], beta))
    return objs, arrs


# ---------------------------------------------------------------------------
# atomic topology on the underlying 1-category


def _underlying(T: TwoCat, c: int) -> list[tuple[int, int]]:
    return [(d, f) for d in T.objects() for f in T.hom[(d, c)].objects()]


def _pullback_sieve(T: TwoCat, sieve: frozenset, e: int, c: int, h: int) -> frozenset:
    """``h^* S`` for ``h: e -> c``: pairs ``(d, k)`` with ``h∘k ∈ S``."""
    return frozenset((d, k) for d in T.objects() for k in T.hom[(d, e)].objects() if (d, T.compose1(d, e, c, h, k)) in sieve)


def one_sieves(T: TwoCat, c: int) -> list[frozenset]:
    """All sieves on ``c`` in the underlying 1-category (sets of ``(d, f)`` closed under precomposition)."""
    arrows = _underlying(T, c)
    out = []
    for mask in range(1 << len(arrows)):
        S = frozenset(a for k, a in enumerate(arrows) if mask >> k & 1)
        if all((b, T.compose1(b, d, c, f, k)) in S for (d, f) in S for b in T.objects() for k in T.hom[(b, d)].objects()):
            out.append(S)
    return out


def singleton_sieve(T: TwoCat, d0: int, c: int, f: int) -> frozenset:
    return frozenset((b, T.compose1(b, d0, c, f, k)) for b in T.objects() for k in T.hom[(b, d0)].objects())


@dataclass(frozen=True)
class AtomicTopology:
    site: TwoCat
    covers: tuple[frozenset[frozenset], ...]  # per object, the covering 1-sieves

    def is_covering(self, c: int, S: frozenset) -> bool:
        return S in self.covers[c]


def atomic_topology(T: TwoCat) -> AtomicTopology:
    """Covering sieves are the singleton-generated ones."""
    return AtomicTopology(
        T, tuple(frozenset(singleton_sieve(T, d, c, f) for (d, f) in _underlying(T, c)) for c in T.objects())
    )


def nonempty_topology(T: TwoCat) -> AtomicTopology:
    return AtomicTopology(T, tuple(frozenset(S for S in one_sieves(T, c) if S) for c in T.objects()))


def topology_axioms(J: AtomicTopology) -> dict[str, object]:
    """Witness (or ``None``) for each axiom: maximal sieve, stability, transitivity."""
    T = J.site
    result: dict[str, object] = {"maximal": None, "stability": None, "transitivity": None}
    all_sieves = {c: one_sieves(T, c) for c in T.objects()}
    for c in T.objects():
        if not J.is_covering(c, frozenset(_underlying(T, c))):
            result["maximal"] = c
            break
    for c in T.objects():
        for S in J.covers[c]:
            for e in T.objects():
                for h in T.hom[(e, c)].objects():
                    if not J.is_covering(e, _pullback_sieve(T, S, e, c, h)):
                        result["stability"] = result["stability"] or (c, sorted(S), e, h)
    for c in T.objects():
        for R in all_sieves[c]:
            if J.is_covering(c, R):
                continue
            for S in J.covers[c]:
                if all(J.is_covering(e, _pullback_sieve(T, R, e, c, h)) for (e, h) in S):
                    result["transitivity"] = result["transitivity"] or (c, sorted(R), sorted(S))
                    break
    return result


# ---------------------------------------------------------------------------
# the 2-sheaf condition


def restriction_functor(yC, S: Sieve2, F: CatPresheaf, bounds: Bounds = DEFAULT_BOUNDS):
    """``[y c, F] -> [S, F]``, precomposition with the sieve inclusion."""
    left = transformation_category(S.inclusion.cod, F, bounds)
    right = transformation_category(S.presheaf, F, bounds)
    incs = S.inclusion.components
    obj = []
    for theta in left.transformations:
        key = tuple(compose_functors(t, i).key() for t, i in zip(theta.components, incs))
        obj.append(right.category.obj_index(key))
    arr = []
    for m in left.modifications:
        comps = tuple(whisker_right(mm, i) for mm, i in zip(m.components, incs))
        dom_key = tuple(compose_functors(t, i).key() for t, i in zip(m.dom.components, incs))
        cod_key = tuple(compose_functors(t, i).key() for t, i in zip(m.cod.components, incs))
        arr.append(right.category.arr_index((dom_key, cod_key, tuple(c.components for c in comps))))
    return Functor(left.category, right.category, tuple(obj), tuple(arr)), left, right


def covering_sieves(T: TwoCat, c: int) -> list[Sieve2]:
    out, seen = [], set()
    for d in T.objects():
        for f in T.hom[(d, c)].objects():
            S = generated_sieve(T, d, c, f)
            if S.key() not in seen:
                seen.add(S.key())
                out.append(S)
    return out


def is_2sheaf(F: CatPresheaf, bounds: Bounds = DEFAULT_BOUNDS) -> tuple[bool, object]:
    """Restriction along every singleton-generated sieve is an isomorphism of categories."""
    T = F.site
    for c in T.objects():
        yC = representable(T, c)
        for S in covering_sieves(T, c):
            R, left, right = restriction_functor(yC, S, F, bounds)
            ok, _ = is_iso_of_categories(R)
            if not ok:
                return False, {
                    "object": c,
                    "sieve": S.key(),
                    "defects": functor_defects(R),
                    "sizes": [left.category.n_objects, left.category.n_arrows, right.category.n_objects, right.category.n_arrows],
                }
    return True, None


def atomic_injectivity_check(F: CatPresheaf) -> tuple[bool, object]:
    """Every ``F(f)`` is injective on objects and faithful."""
    for (a, b, f), Ff in sorted(F.on_1cells.items(), key=lambda kv: kv[0]):
        d = functor_defects(Ff)
        if d["injective_on_objects"] is not None or d["faithful"] is not None:
            return False, {"1-cell": (a, b, f), "injective_on_objects": d["injective_on_objects"], "faithful": d["faithful"]}
    return True, None


def yoneda_evaluation(F: CatPresheaf, c: int, bounds: Bounds = DEFAULT_BOUNDS) -> Functor:
    """``[y c, F] -> F(c)``, evaluation at the identity 1-cell."""
    T = F.site
    y = representable(T, c)
    TC = transformation_category(y, F, bounds)
    idc = T.identity[c]
    obj = tuple(theta.components[c].obj_map[idc] for theta in TC.transformations)
    arr = tuple(m.components[c].components[idc] for m in TC.modifications)
    return Functor(TC.category, F.cats[c], obj, arr)


def discrete_valued_presheaf(T: TwoCat, sizes: Sequence[int], maps: dict[tuple[int, int, int], Sequence[int]]) -> CatPresheaf:
    """Presheaf of discrete categories; ``maps[(a, b, f)]`` is the object function ``F(b) -> F(a)``.

    Every 2-cell must act by identities, so parallel 1-cells related by a
    2-cell need equal maps.
    """
    cats = [discrete_category(n) for n in sizes]
    on1 = {k: Functor(cats[k[1]], cats[k[0]], tuple(v), tuple(v)) for k, v in maps.items()}
    on2 = {}
    for a, b in itertools.product(T.objects(), repeat=2):
        H = T.hom[(a, b)]
        for al in H.arrows():
            Fd = on1[(a, b, H.dom[al])]
            on2[(a, b, al)] = NatTrans(Fd, on1[(a, b, H.cod[al])], Fd.obj_map)
    return validate_cat_presheaf(T, cats, on1, on2)

"""The 1-dimensional pipeline for finite groups.

Right ``G``-sets, the orbit category, atomic sheaves on it, and the
colimit reconstruction ``Ψ`` together with the representable ``Φ``.  Used
as an independent oracle for the 2-dimensional modules on discrete
2-groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import grp
from .catkit import FinCat, validate_category
from .errors import AssociativityViolation, AxiomViolation, UnitLawViolation
from .grp import FiniteGroup, Subgroup
from .report import Report


@dataclass(frozen=True, eq=False)
class GSet:
    group: FiniteGroup
    size: int
    act: tuple[tuple[int, ...], ...]  # act[x][g] = x·g
    labels: tuple | None = None

    def elements(self) -> range:
        return range(self.size)

    def fixed_points(self, U: Subgroup) -> list[int]:
        return [x for x in self.elements() if all(self.act[x][u] == x for u in U)]


def validate_gset(G: FiniteGroup, act: Sequence[Sequence[int]], labels: Sequence | None = None) -> GSet:
    act = tuple(tuple(int(v) for v in row) for row in act)
    n = len(act)
    for x in range(n):
        if len(act[x]) != G.order or any(not 0 <= y < n for y in act[x]):
            raise AxiomViolation(f"action row of {x} malformed", x)
        if act[x][0] != x:
            raise UnitLawViolation(f"x·e != x at {x}", x)
        for g in G.elements():
            for h in G.elements():
                if act[act[x][g]][h] != act[x][G.mul(g, h)]:
                    raise AssociativityViolation(f"(x·g)·h != x·(gh) at ({x},{g},{h})", (x, g, h))
    return GSet(G, n, act, tuple(labels) if labels is not None else None)


def enumerate_gsets(G: FiniteGroup, n: int) -> list[GSet]:
    """Every right action of ``G`` on ``{0..n-1}`` (labelled, not up to isomorphism)."""
    out = []
    for images in itertools.product(itertools.permutations(range(n)), repeat=G.order):
        act = [[images[g][x] for g in G.elements()] for x in range(n)]
        try:
            out.append(validate_gset(G, act))
        except AxiomViolation:
            continue
    return out


def coset_space(G: FiniteGroup, U: Subgroup) -> GSet:
    """Right cosets ``Ux`` with ``(Ux)·g = Uxg``, ordered by smallest member."""
    which = [-1] * G.order
    cosets: list[tuple[int, ...]] = []
    for a in G.elements():
        if which[a] == -1:
            c = tuple(sorted(G.mul(u, a) for u in U))
            for b in c:
                which[b] = len(cosets)
            cosets.append(c)
    act = [[which[G.mul(c[0], g)] for g in G.elements()] for c in cosets]
    return validate_gset(G, act, cosets)


def coset_coequalizer_check(G: FiniteGroup, U: Subgroup) -> bool:
    """``G -> U\\G`` coequalizes ``(u, g) -> ug`` and ``(u, g) -> g``, is onto, and has exactly the orbit fibres."""
    X = coset_space(G, U)
    q = [next(k for k, c in enumerate(X.labels) if g in c) for g in G.elements()]
    if any(q[G.mul(u, g)] != q[g] for u in U for g in G.elements()):
        return False
    if set(q) != set(X.elements()):
        return False
    for a in G.elements():
        for b in G.elements():
            if (q[a] == q[b]) != (G.mul(b, G.inv(a)) in U):
                return False
    return all(q[G.mul(g, h)] == X.act[q[g]][h] for g in G.elements() for h in G.elements())


def equivariant_maps(X: GSet, Y: GSet) -> list[tuple[int, ...]]:
    G = X.group
    out = []
    for f in itertools.product(range(Y.size), repeat=X.size):
        if all(f[X.act[x][g]] == Y.act[f[x]][g] for x in X.elements() for g in G.elements()):
            out.append(f)
    return out


def is_gset_isomorphism(X: GSet, Y: GSet, f: Sequence[int]) -> bool:
    f = tuple(f)
    if X.size != Y.size or sorted(f) != list(Y.elements()):
        return False
    return all(f[X.act[x][g]] == Y.act[f[x]][g] for x in X.elements() for g in X.group.elements())


# ---------------------------------------------------------------------------
# orbit category


@dataclass(frozen=True, eq=False)
class ClassicalOrbitCat:
    """Orbit category; arrow labels are ``(u, v, g)``.

    With ``identified`` set, ``g`` is the smallest element of the coset
    ``Vg``, so each arrow is one equivariant map ``G/U -> G/V``.
    """

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    category: FinCat
    identified: bool = False

    def arrow(self, u: int, v: int, g: int) -> int:
        if self.identified:
            g = min(self.group.mul(x, g) for x in self.subgroups[v])
        return self.category.arr_index((u, v, g))

    def hom(self, u: int, v: int) -> list[int]:
        """Group elements ``g`` labelling the arrows ``G/U -> G/V``."""
        return [self.category.arr_labels[f][2] for f in self.category.hom(u, v)]


def classical_orbit_category(G: FiniteGroup, identify: bool = False) -> ClassicalOrbitCat:
    """Arrows ``G/U -> G/V`` are elements ``g`` with ``U ⊆ g^-1 V g``; composition is ``k·g``."""
    subs = tuple(grp.enumerate_subgroups(G))

    def rep(v: int, g: int) -> int:
        return min(G.mul(x, g) for x in subs[v]) if identify else g

    labels = []
    for u, U in enumerate(subs):
        for v, V in enumerate(subs):
            for g in G.elements():
                if U <= grp.conjugate_subgroup(V, g) and rep(v, g) == g:
                    labels.append((u, v, g))
    index = {lab: k for k, lab in enumerate(labels)}
    comp = {}
    for (u, v, g) in labels:
        for (v2, w, k) in labels:
            if v2 == v:
                comp[(index[(v, w, k)], index[(u, v, g)])] = index[(u, w, rep(w, G.mul(k, g)))]
    C = validate_category(
        len(subs),
        [lab[0] for lab in labels],
        [lab[1] for lab in labels],
        [index[(u, u, 0)] for u in range(len(subs))],
        comp,
        obj_labels=[U.members for U in subs],
        arr_labels=labels,
    )
    return ClassicalOrbitCat(G, subs, C, identify)


def right_ore_check(O: ClassicalOrbitCat) -> tuple[bool, object]:
    """Every cospan ``f: a -> c <- b: g`` has ``h, k`` with ``f∘h = g∘k``; returns a failing cospan if not."""
    C = O.category
    for f in C.arrows():
        for g in C.arrows():
            if C.cod[f] != C.cod[g]:
                continue
            found = any(
                C.comp[(f, h)] == C.comp[(g, k)]
                for d in C.objects()
                for h in C.hom(d, C.dom[f])
                for k in C.hom(d, C.dom[g])
            )
            if not found:
                return False, (f, g)
    return True, None


# ---------------------------------------------------------------------------
# presheaves


@dataclass(frozen=True, eq=False)
class Presheaf1:
    """``F: C^op -> Set``: ``sizes[a] = |F(a)|``, ``maps[f]`` the function ``F(cod f) -> F(dom f)``."""

    category: FinCat
    sizes: tuple[int, ...]
    maps: tuple[tuple[int, ...], ...]


def validate_presheaf1(C: FinCat, sizes: Sequence[int], maps: Sequence[Sequence[int]]) -> Presheaf1:
    sizes = tuple(sizes)
    maps = tuple(tuple(m) for m in maps)
    if len(sizes) != C.n_objects or len(maps) != C.n_arrows:
        raise AxiomViolation("presheaf tables have the wrong length", None)
    for f in C.arrows():
        if len(maps[f]) != sizes[C.cod[f]] or any(not 0 <= y < sizes[C.dom[f]] for y in maps[f]):
            raise AxiomViolation(f"F({f}) is not a function F(cod) -> F(dom)", f)
    for a in C.objects():
        if maps[C.identity[a]] != tuple(range(sizes[a])):
            raise AxiomViolation(f"F(1_{a}) is not the identity", a)
    for (g, f), gf in C.comp.items():
        if maps[gf] != tuple(maps[f][maps[g][x]] for x in range(sizes[C.cod[g]])):
            raise AxiomViolation(f"F(g∘f) != F(f)∘F(g) at ({g},{f})", (g, f))
    return Presheaf1(C, sizes, maps)


def terminal_presheaf(O: ClassicalOrbitCat) -> Presheaf1:
    C = O.category
    return validate_presheaf1(C, [1] * C.n_objects, [(0,)] * C.n_arrows)


def atomic_sheaf_check(F: Presheaf1) -> tuple[bool, object]:
    """Unique amalgamation: for ``f: D -> C`` and ``x ∈ F(D)`` with ``F(g)x = F(h)x`` whenever
    ``f∘g = f∘h``, there is exactly one ``y ∈ F(C)`` with ``F(f)y = x``."""
    C = F.category
    for f in C.arrows():
        D, T = C.dom[f], C.cod[f]
        pairs = [
            (g, h)
            for E in C.objects()
            for g in C.hom(E, D)
            for h in C.hom(E, D)
            if C.comp[(f, g)] == C.comp[(f, h)]
        ]
        for x in range(F.sizes[D]):
            if not all(F.maps[g][x] == F.maps[h][x] for g, h in pairs):
                continue
            ys = [y for y in range(F.sizes[T]) if F.maps[f][y] == x]
            if len(ys) != 1:
                return False, {"arrow": f, "element": x, "preimages": ys}
    return True, None


def classical_phi(X: GSet, O: ClassicalOrbitCat) -> tuple[Presheaf1, list[list[int]]]:
    """``G/U -> X^U`` with ``F(g)(y) = y·g``; returns the presheaf and the fixed-point lists."""
    fixed = [X.fixed_points(U) for U in O.subgroups]
    pos = [{x: k for k, x in enumerate(fx)} for fx in fixed]
    C = O.category
    maps = []
    for f in C.arrows():
        u, v, g = C.arr_labels[f]
        maps.append(tuple(pos[u][X.act[y][g]] for y in fixed[v]))
    return validate_presheaf1(C, [len(fx) for fx in fixed], maps), fixed


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted((sorted(v) for v in groups.values()), key=lambda c: c[0])


@dataclass(frozen=True, eq=False)
class GermSet:
    gset: GSet
    classes: tuple[tuple[tuple[int, int], ...], ...]  # members (u, x)

    @cached_property
    def class_of(self) -> dict[tuple[int, int], int]:
        return {m: k for k, c in enumerate(self.classes) for m in c}


def classical_psi(F: Presheaf1, O: ClassicalOrbitCat) -> GermSet:
    """Germ classes ``[U, x]`` with ``[U, x]·g = [g^-1 U g, F(g)(x)]``; representative independence checked."""
    G = O.group
    subs = O.subgroups
    nodes = [(u, x) for u in range(len(subs)) for x in range(F.sizes[u])]
    uf = _UnionFind(nodes)
    for u, U in enumerate(subs):
        for w, W in enumerate(subs):
            if W <= U:
                e = O.arrow(w, u, 0)
                for x in range(F.sizes[u]):
                    uf.union((u, x), (w, F.maps[e][x]))
    classes = tuple(tuple(c) for c in uf.classes())
    class_of = {m: k for k, c in enumerate(classes) for m in c}
    sub_index = {U.members: k for k, U in enumerate(subs)}
    act = []
    for c in classes:
        row = []
        for g in G.elements():
            vals = set()
            for (u, x) in c:
                w = sub_index[grp.conjugate_subgroup(subs[u], g).members]
                vals.add(class_of[(w, F.maps[O.arrow(w, u, g)][x])])
            if len(vals) != 1:
                raise AxiomViolation(f"germ action depends on the representative of class {c[0]}", (c, g))
            row.append(vals.pop())
        act.append(row)
    return GermSet(validate_gset(G, act, [c[0] for c in classes]), classes)


def counit_map(X: GSet, O: ClassicalOrbitCat) -> tuple[int, ...]:
    """``ΨΦ(X) -> X``, ``[U, y] -> y``."""
    F, fixed = classical_phi(X, O)
    germs = classical_psi(F, O)
    out = []
    for c in germs.classes:
        vals = {fixed[u][k] for (u, k) in c}
        if len(vals) != 1:
            raise AxiomViolation("counit is not well defined on a germ class", c)
        out.append(vals.pop())
    return tuple(out)


def unit_maps(F: Presheaf1, O: ClassicalOrbitCat) -> list[tuple[int, ...] | None]:
    """Per ``U``, the map ``F(G/U) -> Ψ(F)^U``, ``x -> [U, x]`` (as positions in the fixed-point list)."""
    germs = classical_psi(F, O)
    out = []
    for u, U in enumerate(O.subgroups):
        fixed = germs.gset.fixed_points(U)
        pos = {c: k for k, c in enumerate(fixed)}
        images = [germs.class_of[(u, x)] for x in range(F.sizes[u])]
        if any(c not in pos for c in images):
            raise AxiomViolation(f"unit component at {u} leaves the fixed points", u)
        out.append(tuple(pos[c] for c in images))
    return out


def unit_is_iso(F: Presheaf1, O: ClassicalOrbitCat) -> tuple[bool, object]:
    germs = classical_psi(F, O)
    for u, (U, eta) in enumerate(zip(O.subgroups, unit_maps(F, O))):
        n_fixed = len(germs.gset.fixed_points(U))
        if len(set(eta)) != len(eta):
            return False, {"object": u, "property": "injective"}
        if len(eta) != n_fixed:
            return False, {"object": u, "property": "surjective"}
    return True, None


def verify_classical_equivalence(
    G: FiniteGroup,
    gsets: Sequence[GSet] = (),
    presheaves: Sequence[Presheaf1] = (),
    report: Report | None = None,
) -> Report:
    rep = report if report is not None else Report()
    O = classical_orbit_category(G, identify=True)
    rep.add("classical.orbit_category.right_ore", "Right Ore Condition", right_ore_check(O)[0])
    for U in O.subgroups:
        rep.add(f"classical.coset_coequalizer[{list(U.members)}]", "coset coequalizer lemma", coset_coequalizer_check(G, U))
    for n, X in enumerate(gsets):
        tag = f"classical.gset[{n}]"
        with rep.timed(f"{tag}.phi_is_sheaf", "Lemma sheaf atomic top characterization") as e:
            F, _ = classical_phi(X, O)
            e.passed, e.witness = atomic_sheaf_check(F)
        with rep.timed(f"{tag}.fixed_point_iso", "BG(G/U, X) = X^U") as e:
            sizes = [len(equivariant_maps(coset_space(G, U), X)) for U in O.subgroups]
            e.passed = sizes == list(F.sizes)
            e.witness = None if e.passed else {"bg_hom": sizes, "fixed": list(F.sizes)}
        with rep.timed(f"{tag}.counit_iso", "X = colim BG(-, X)") as e:
            eps = counit_map(X, O)
            germs = classical_psi(F, O)
            e.passed = is_gset_isomorphism(germs.gset, X, eps)
            e.witness = None if e.passed else list(eps)
    for n, F in enumerate(presheaves):
        tag = f"classical.presheaf[{n}]"
        sheaf, witness = atomic_sheaf_check(F)
        with rep.timed(f"{tag}.unit_iso", "F(G/U) = BG(G/U, colim F)") as e:
            ok, w = unit_is_iso(F, O)
            e.passed = ok
            e.witness = None if ok else {"unit": w, "sheaf": sheaf, "sheaf_witness": witness}
    return rep

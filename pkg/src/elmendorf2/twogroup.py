"""Strict 2-groups, crossed modules and the sub-2-group lattice.

A 2-group stores its object group ``G0`` and arrow group ``G1`` with the
domain/codomain homomorphisms ``d0``/``d1``, the identity-assigning
homomorphism ``i`` and an explicit composition table ``comp[(g, f)] = g∘f``
(defined when ``d1(f) == d0(g)``).  The tensor is the group law.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from . import grp
from .bounds import DEFAULT_BOUNDS, Bounds, check_bound
from .catkit import FinCat, validate_category
from .errors import (
    AxiomViolation,
    CategoryAxiomViolation,
    CrossedModuleViolation,
    InterchangeViolation,
    NotASubTwoGroup,
    NotHomomorphic,
)
from .grp import FiniteGroup, GroupHom, Subgroup


@dataclass(frozen=True, eq=False)
class TwoGroup:
    G0: FiniteGroup
    G1: FiniteGroup
    d0: GroupHom
    d1: GroupHom
    i: GroupHom
    comp: Mapping[tuple[int, int], int]
    name: str | None = field(default=None, compare=False)

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def tensor0(self, *objs: int) -> int:
        return self.G0.prod(*objs)

    def tensor1(self, *arrs: int) -> int:
        return self.G1.prod(*arrs)

    def composable_pairs(self) -> list[tuple[int, int]]:
        """Pairs ``(g, f)`` with ``g∘f`` defined."""
        return list(self.comp)

    @cached_property
    def underlying_category(self) -> FinCat:
        return FinCat(
            self.G0.order,
            self.d0.map,
            self.d1.map,
            self.i.map,
            dict(self.comp),
            tuple(self.G0.elements()),
            tuple(self.G1.elements()),
        )

    def key(self) -> tuple:
        return (self.G0.mult, self.G1.mult, self.d0.map, self.d1.map, self.i.map)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoGroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"TwoGroup({label}|G0|={self.G0.order}, |G1|={self.G1.order})"


def validate_two_group(
    G0: FiniteGroup,
    G1: FiniteGroup,
    d0: Sequence[int] | GroupHom,
    d1: Sequence[int] | GroupHom,
    i: Sequence[int] | GroupHom,
    comp: Mapping[tuple[int, int], int],
    name: str | None = None,
) -> TwoGroup:
    d0 = grp.check_hom(d0.map if isinstance(d0, GroupHom) else d0, G1, G0)
    d1 = grp.check_hom(d1.map if isinstance(d1, GroupHom) else d1, G1, G0)
    i = grp.check_hom(i.map if isinstance(i, GroupHom) else i, G0, G1)
    for A in G0.elements():
        if d0(i(A)) != A or d1(i(A)) != A:
            raise CategoryAxiomViolation(f"identity arrow of object {A} has wrong endpoints", A)
    comp = {(int(g), int(f)): int(h) for (g, f), h in comp.items()}
    try:
        validate_category(G0.order, d0.map, d1.map, i.map, comp)
    except AxiomViolation as exc:
        raise CategoryAxiomViolation(f"underlying category invalid: {exc}", exc.witness) from exc
    pairs = list(comp)
    for (g, k) in pairs:
        gk = comp[(g, k)]
        for (h, l) in pairs:
            lhs = comp[(G1.mul(g, h), G1.mul(k, l))]
            rhs = G1.mul(gk, comp[(h, l)])
            if lhs != rhs:
                raise InterchangeViolation(
                    f"(g⊗h)∘(k⊗l) != (g∘k)⊗(h∘l) for g={g}, h={h}, k={k}, l={l}", (g, h, k, l)
                )
    return TwoGroup(G0, G1, d0, d1, i, comp, name)


def closed_form_composite(G: TwoGroup, g: int, f: int) -> int:
    """``g · i(d0 g)^-1 · f``; agrees with ``comp`` on every validated 2-group."""
    return G.G1.prod(g, G.G1.inv(G.i(G.d0(g))), f)


def comp_inverse(G: TwoGroup, g: int) -> int:
    """Inverse of ``g: A -> B`` under composition: ``i(A) · g^-1 · i(B)``."""
    return G.G1.prod(G.i(G.d0(g)), G.G1.inv(g), G.i(G.d1(g)))


# ---------------------------------------------------------------------------
# crossed modules


@dataclass(frozen=True, eq=False)
class CrossedModule:
    base: FiniteGroup
    fiber: FiniteGroup
    boundary: GroupHom
    action: tuple[tuple[int, ...], ...]  # action[g][h] = g·h

    def act(self, g: int, h: int) -> int:
        return self.action[g][h]


def validate_crossed_module(
    base: FiniteGroup,
    fiber: FiniteGroup,
    boundary: Sequence[int] | GroupHom,
    action: Sequence[Sequence[int]],
) -> CrossedModule:
    """Checks the action axioms, equivariance and the Peiffer identity."""
    G, H = base, fiber
    bd = grp.check_hom(boundary.map if isinstance(boundary, GroupHom) else boundary, H, G)
    act = tuple(tuple(int(x) for x in row) for row in action)
    if len(act) != G.order or any(len(row) != H.order for row in act):
        raise CrossedModuleViolation("action table must be |base| x |fiber|", None)
    for h in H.elements():
        if act[0][h] != h:
            raise CrossedModuleViolation(f"identity of the base acts nontrivially on {h}", h)
    for g in G.elements():
        if sorted(act[g]) != list(H.elements()):
            raise CrossedModuleViolation(f"base element {g} does not act bijectively", g)
        for h in H.elements():
            for h2 in H.elements():
                if act[g][H.mul(h, h2)] != H.mul(act[g][h], act[g][h2]):
                    raise CrossedModuleViolation(f"{g} does not act by an automorphism at ({h},{h2})", (g, h, h2))
        for g2 in G.elements():
            for h in H.elements():
                if act[g][act[g2][h]] != act[G.mul(g, g2)][h]:
                    raise CrossedModuleViolation(f"action is not associative at ({g},{g2},{h})", (g, g2, h))
    for g in G.elements():
        for h in H.elements():
            if bd(act[g][h]) != G.prod(g, bd(h), G.inv(g)):
                raise CrossedModuleViolation(f"boundary is not equivariant at ({g},{h})", (g, h))
    for h in H.elements():
        for h2 in H.elements():
            if act[bd(h)][h2] != H.prod(h, h2, H.inv(h)):
                raise CrossedModuleViolation(f"Peiffer identity fails at ({h},{h2})", (h, h2))
    return CrossedModule(G, H, bd, act)


def _semidirect(xm: CrossedModule) -> FiniteGroup:
    """``fiber ⋊ base`` with ``(h, g)`` encoded as ``h*|base| + g``."""
    G, H = xm.base, xm.fiber
    n = G.order
    pairs = [(h, g) for h in H.elements() for g in G.elements()]
    table = [
        [H.mul(h, xm.act(g, h2)) * n + G.mul(g, g2) for (h2, g2) in pairs]
        for (h, g) in pairs
    ]
    return grp.validate_group(table, labels=pairs)


def from_crossed_module(xm: CrossedModule, name: str | None = None) -> TwoGroup:
    G, H = xm.base, xm.fiber
    n = G.order
    G1 = _semidirect(xm)
    d0 = [g for h in H.elements() for g in G.elements()]
    d1 = [G.mul(xm.boundary(h), g) for h in H.elements() for g in G.elements()]
    i = [g for g in G.elements()]
    comp = {}
    for h1 in H.elements():
        for g in G.elements():
            f = h1 * n + g
            target = d1[f]
            for h2 in H.elements():
                comp[(h2 * n + target, f)] = H.mul(h2, h1) * n + g
    return validate_two_group(G, G1, d0, d1, i, comp, name)


def _subgroup_as_group(G: FiniteGroup, members: Sequence[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Re-index a subgroup as a group; returns it with the embedding table."""
    members = tuple(sorted(members))
    index = {m: k for k, m in enumerate(members)}
    table = [[index[G.mul(a, b)] for b in members] for a in members]
    return grp.validate_group(table, labels=[G.label(m) for m in members]), members


def to_crossed_module(G: TwoGroup) -> CrossedModule:
    """Fiber ``ker d0``, boundary ``d1`` restricted, action by conjugation with ``i``."""
    H, embed = _subgroup_as_group(G.G1, G.d0.kernel())
    index = {m: k for k, m in enumerate(embed)}
    boundary = [G.d1(m) for m in embed]
    action = [
        [index[G.G1.prod(G.i(g), m, G.G1.inv(G.i(g)))] for m in embed]
        for g in G.G0.elements()
    ]
    return validate_crossed_module(G.G0, H, boundary, action)


def crossed_module_isomorphisms(X: CrossedModule, Y: CrossedModule) -> Iterator[tuple[GroupHom, GroupHom]]:
    """Pairs ``(alpha: base, beta: fiber)`` commuting with boundary and action."""
    for beta in grp.group_isomorphisms(X.fiber, Y.fiber):
        for alpha in grp.group_isomorphisms(X.base, Y.base):
            if any(Y.boundary(beta(h)) != alpha(X.boundary(h)) for h in X.fiber.elements()):
                continue
            if all(
                beta(X.act(g, h)) == Y.act(alpha(g), beta(h))
                for g in X.base.elements()
                for h in X.fiber.elements()
            ):
                yield alpha, beta


def is_two_group_isomorphism(G: TwoGroup, H: TwoGroup, phi0: Sequence[int], phi1: Sequence[int]) -> bool:
    """Whether the pair of maps is an isomorphism of 2-groups ``G -> H``."""
    phi0, phi1 = tuple(phi0), tuple(phi1)
    if sorted(phi0) != list(H.G0.elements()) or sorted(phi1) != list(H.G1.elements()):
        return False
    try:
        grp.check_hom(phi0, G.G0, H.G0)
        grp.check_hom(phi1, G.G1, H.G1)
    except NotHomomorphic:
        return False
    for g in G.G1.elements():
        if H.d0(phi1[g]) != phi0[G.d0(g)] or H.d1(phi1[g]) != phi0[G.d1(g)]:
            return False
    if any(H.i(phi0[A]) != phi1[G.i(A)] for A in G.G0.elements()):
        return False
    return all(H.comp[(phi1[g], phi1[f])] == phi1[h] for (g, f), h in G.comp.items())


def two_group_isomorphisms(G: TwoGroup, H: TwoGroup) -> Iterator[tuple[GroupHom, GroupHom]]:
    for phi1 in grp.group_isomorphisms(G.G1, H.G1):
        phi0 = tuple(H.d0(phi1(G.i(A))) for A in G.G0.elements())
        if is_two_group_isomorphism(G, H, phi0, phi1.map):
            yield GroupHom(G.G0, H.G0, phi0), phi1


def round_trip_isomorphism(G: TwoGroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The explicit iso ``from_crossed_module(to_crossed_module(G)) -> G``, ``(h, g) -> h·i(g)``."""
    xm = to_crossed_module(G)
    R = from_crossed_module(xm)
    embed = tuple(sorted(G.d0.kernel()))
    n = G.G0.order
    phi1 = [0] * R.G1.order
    for h in xm.fiber.elements():
        for g in G.G0.elements():
            phi1[h * n + g] = G.G1.mul(embed[h], G.i(g))
    phi0 = tuple(G.G0.elements())
    if not is_two_group_isomorphism(R, G, phi0, phi1):
        raise AxiomViolation("round trip map (h, g) -> h·i(g) is not an isomorphism", None)
    return phi0, tuple(phi1)


# ---------------------------------------------------------------------------
# standard 2-groups


def trivial_two_group() -> TwoGroup:
    T = grp.trivial_group()
    return validate_two_group(T, T, [0], [0], [0], {(0, 0): 0}, name="T")


def discrete_two_group(G: FiniteGroup, name: str | None = None) -> TwoGroup:
    """``D(G)``: only identity arrows."""
    ident = list(G.elements())
    return validate_two_group(G, G, ident, ident, ident, {(g, g): g for g in G.elements()}, name=name)


def one_object_two_group(A: FiniteGroup, name: str | None = None) -> TwoGroup:
    """``ONE(A)``: a single object with arrow group ``A``, composition the group law."""
    T = grp.trivial_group()
    zeros = [0] * A.order
    comp = {(g, f): A.mul(g, f) for g in A.elements() for f in A.elements()}
    return validate_two_group(T, A, zeros, zeros, [0], comp, name=name)


def identity_crossed_module(G: FiniteGroup) -> CrossedModule:
    """``id: G -> G`` with the conjugation action."""
    action = [[G.prod(g, h, G.inv(g)) for h in G.elements()] for g in G.elements()]
    return validate_crossed_module(G, G, list(G.elements()), action)


# ---------------------------------------------------------------------------
# sub-2-groups


@dataclass(frozen=True, eq=False)
class SubTwoGroup:
    parent: TwoGroup
    U0: Subgroup
    U1: Subgroup

    def key(self) -> tuple:
        return (self.U0.members, self.U1.members)

    def contains_object(self, A: int) -> bool:
        return A in self.U0

    def contains_arrow(self, g: int) -> bool:
        return g in self.U1

    def __le__(self, other: "SubTwoGroup") -> bool:
        return self.U0 <= other.U0 and self.U1 <= other.U1

    def __eq__(self, other) -> bool:
        return isinstance(other, SubTwoGroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SubTwoGroup(U0={list(self.U0.members)}, U1={list(self.U1.members)})"


def make_sub_two_group(G: TwoGroup, objects: Sequence[int], arrows: Sequence[int]) -> SubTwoGroup:
    try:
        U0 = grp.make_subgroup(G.G0, objects)
        U1 = grp.make_subgroup(G.G1, arrows)
    except AxiomViolation as exc:
        raise NotASubTwoGroup(f"component is not a subgroup: {exc}", exc.witness) from exc
    for A in U0:
        if G.i(A) not in U1:
            raise NotASubTwoGroup(f"identity arrow of object {A} missing", A)
    for g in U1:
        if G.d0(g) not in U0 or G.d1(g) not in U0:
            raise NotASubTwoGroup(f"arrow {g} has an endpoint outside the object subgroup", g)
    for (g, f), h in G.comp.items():
        if g in U1 and f in U1 and h not in U1:
            raise NotASubTwoGroup(f"not closed under composition at ({g},{f})", (g, f))
    return SubTwoGroup(G, U0, U1)


def whole(G: TwoGroup) -> SubTwoGroup:
    return SubTwoGroup(G, Subgroup(G.G0, tuple(G.G0.elements())), Subgroup(G.G1, tuple(G.G1.elements())))


def trivial_sub(G: TwoGroup) -> SubTwoGroup:
    return SubTwoGroup(G, Subgroup(G.G0, (0,)), Subgroup(G.G1, (0,)))


def _sub_sort_key(U: SubTwoGroup) -> tuple:
    return (len(U.U0) + len(U.U1), len(U.U0), U.U0.members, U.U1.members)


def enumerate_sub_two_groups(G: TwoGroup, bounds: Bounds = DEFAULT_BOUNDS) -> list[SubTwoGroup]:
    """All sub-2-groups, smallest first; the trivial one is first and ``G`` last."""
    check_bound(G.G0.order, bounds.max_group_order, "|G0|")
    check_bound(G.G1.order, bounds.max_arrow_group_order, "|G1|")
    out = []
    subs0 = grp.enumerate_subgroups(G.G0)
    for U1 in grp.enumerate_subgroups(G.G1):
        ends = {G.d0(g) for g in U1} | {G.d1(g) for g in U1}
        for U0 in subs0:
            if ends <= U0.member_set and all(G.i(A) in U1 for A in U0):
                out.append(SubTwoGroup(G, U0, U1))
    return sorted(out, key=_sub_sort_key)


def conjugate_sub_two_group(U: SubTwoGroup, A: int) -> SubTwoGroup:
    """``A^-1 U A``: objects conjugated by ``A``, arrows by ``i(A)``."""
    G = U.parent
    return make_sub_two_group(
        G,
        grp.conjugate_subgroup(U.U0, A).members,
        grp.conjugate_subgroup(U.U1, G.i(A)).members,
    )


def intersect_sub_two_groups(U: SubTwoGroup, V: SubTwoGroup) -> SubTwoGroup:
    return make_sub_two_group(
        U.parent,
        sorted(U.U0.member_set & V.U0.member_set),
        sorted(U.U1.member_set & V.U1.member_set),
    )


@dataclass(frozen=True, eq=False)
class SubTwoGroupPoset:
    """The poset ``L(G)`` of sub-2-groups under inclusion."""

    parent: TwoGroup
    elements: tuple[SubTwoGroup, ...]

    @cached_property
    def _index(self) -> dict[tuple, int]:
        return {U.key(): k for k, U in enumerate(self.elements)}

    def index(self, U: SubTwoGroup) -> int:
        return self._index[U.key()]

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a: int, b: int) -> bool:
        return self.elements[a] <= self.elements[b]

    def meet(self, a: int, b: int) -> int:
        return self.index(intersect_sub_two_groups(self.elements[a], self.elements[b]))

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def as_category(self) -> FinCat:
        """Poset category: one arrow ``a -> b`` for each ``a <= b``."""
        n = len(self.elements)
        arrows = [(a, b) for a in range(n) for b in range(n) if self.leq(a, b)]
        idx = {p: k for k, p in enumerate(arrows)}
        comp = {}
        for (a, b) in arrows:
            for (b2, c) in arrows:
                if b2 == b:
                    comp[(idx[(b, c)], idx[(a, b)])] = idx[(a, c)]
        return validate_category(
            n,
            [a for a, _ in arrows],
            [b for _, b in arrows],
            [idx[(a, a)] for a in range(n)],
            comp,
            arr_labels=arrows,
        )


def sub_two_group_poset(G: TwoGroup, bounds: Bounds = DEFAULT_BOUNDS) -> SubTwoGroupPoset:
    P = SubTwoGroupPoset(G, tuple(enumerate_sub_two_groups(G, bounds)))
    n = len(P)
    for a, b in itertools.product(range(n), repeat=2):
        if P.leq(a, b) and P.leq(b, a) and a != b:
            raise AxiomViolation("inclusion is not antisymmetric", (a, b))
    if not all(P.leq(P.bottom, a) and P.leq(a, P.top) for a in range(n)):
        raise AxiomViolation("poset lacks a bottom or top element", None)
    return P

"""Exact finite group arithmetic on multiplication tables.

Elements are the dense indices ``0 .. order-1`` and ``0`` is always the
identity.  Products are read left to right: ``mul(a, b)`` is "first ``a``,
then ``b``", which for permutation groups means ``(a*b)[x] == b[a[x]]``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import NoIdentity, NoInverse, NotAssociative, NotASubgroup, NotHomomorphic


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mult: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    labels: tuple | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.mult)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def prod(self, *elements: int) -> int:
        out = 0
        for e in elements:
            out = self.mult[out][e]
        return out

    def elements(self) -> range:
        return range(len(self.mult))

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = self.mult[x][a]
            n += 1
        return n

    def is_abelian(self) -> bool:
        return all(self.mult[a][b] == self.mult[b][a] for a in self.elements() for b in self.elements())

    def label(self, a: int):
        return self.labels[a] if self.labels is not None else a

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.mult == other.mult

    def __hash__(self) -> int:
        return hash(self.mult)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class GroupHom:
    dom: FiniteGroup
    cod: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def kernel(self) -> tuple[int, ...]:
        return tuple(a for a in self.dom.elements() if self.map[a] == 0)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.member_set <= other.member_set

    def __repr__(self) -> str:
        return f"Subgroup({list(self.members)})"


def validate_group(table: Sequence[Sequence[int]], labels: Sequence | None = None) -> FiniteGroup:
    n = len(table)
    if n == 0:
        raise NoIdentity("empty table has no identity", None)
    rows = tuple(tuple(int(x) for x in row) for row in table)
    for a, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {a} has length {len(row)}, expected {n}")
        for b, c in enumerate(row):
            if not 0 <= c < n:
                raise ValueError(f"entry ({a},{b}) = {c} out of range")
    for a in range(n):
        if rows[0][a] != a or rows[a][0] != a:
            raise NoIdentity(f"element 0 is not a two-sided identity (fails at {a})", a)
    inverse = []
    for a in range(n):
        try:
            b = rows[a].index(0)
        except ValueError:
            raise NoInverse(f"element {a} has no right inverse", a) from None
        if rows[b][a] != 0:
            raise NoInverse(f"right inverse {b} of {a} is not a left inverse", (a, b))
        inverse.append(b)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            rb = rows[b]
            rab = rows[ab]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
    return FiniteGroup(rows, tuple(inverse), tuple(labels) if labels is not None else None)


def from_permutations(generators: Iterable[Sequence[int]]) -> FiniteGroup:
    """Group generated by permutations of ``0..n-1``, elements in lexicographic order."""
    gens = [tuple(g) for g in generators]
    if not gens:
        return trivial_group()
    degree = len(gens[0])
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[p[x]] for x in range(degree))
            if q not in seen:
                seen.add(q)
                queue.append(q)
    perms = sorted(seen)
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(b[a[x]] for x in range(degree))] for b in perms] for a in perms]
    return validate_group(table, labels=perms)


def trivial_group() -> FiniteGroup:
    return validate_group([[0]])


def cyclic_group(n: int) -> FiniteGroup:
    return validate_group([[(a + b) % n for b in range(n)] for a in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        return from_permutations([tuple(range(n))])
    transposition = (1, 0) + tuple(range(2, n))
    cycle = tuple(range(1, n)) + (0,)
    return from_permutations([transposition, cycle])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Elements ``(g, h)`` encoded as ``g * |H| + h``."""
    m = H.order
    pairs = [(g, h) for g in G.elements() for h in H.elements()]
    table = [[G.mul(g, g2) * m + H.mul(h, h2) for (g2, h2) in pairs] for (g, h) in pairs]
    return validate_group(table, labels=pairs)


def check_hom(f: Sequence[int], dom: FiniteGroup, cod: FiniteGroup) -> GroupHom:
    fmap = tuple(int(x) for x in f)
    if len(fmap) != dom.order or any(not 0 <= y < cod.order for y in fmap):
        raise NotHomomorphic("map is not total on the domain or leaves the codomain", fmap)
    for a in dom.elements():
        for b in dom.elements():
            if fmap[dom.mul(a, b)] != cod.mul(fmap[a], fmap[b]):
                raise NotHomomorphic(f"f({a}*{b}) != f({a})*f({b})", (a, b))
    return GroupHom(dom, cod, fmap)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements()))


def generated_subgroup(G: FiniteGroup, generators: Iterable[int]) -> frozenset[int]:
    gens = list(set(generators))
    members = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(x, g)
            if y not in members:
                members.add(y)
                queue.append(y)
    return frozenset(members)


def make_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    mem = frozenset(members)
    if 0 not in mem:
        raise NotASubgroup("subgroup must contain the identity", sorted(mem))
    for a in mem:
        if G.inv(a) not in mem:
            raise NotASubgroup(f"not closed under inverse at {a}", a)
        for b in mem:
            if G.mul(a, b) not in mem:
                raise NotASubgroup(f"not closed under product at ({a},{b})", (a, b))
    return Subgroup(G, tuple(sorted(mem)))


def _subgroup_sort_key(members: frozenset[int]) -> tuple:
    return (len(members), tuple(sorted(members)))


def enumerate_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups, by size and then lexicographically on sorted members.

    Built by joining cyclic subgroups until closure; every finite subgroup
    is the join of the cyclic subgroups it contains.
    """
    cyclic = {generated_subgroup(G, [a]) for a in G.elements()}
    found: set[frozenset[int]] = set(cyclic)
    frontier = list(found)
    while frontier:
        new: list[frozenset[int]] = []
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = generated_subgroup(G, H | C)
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return [Subgroup(G, tuple(sorted(s))) for s in sorted(found, key=_subgroup_sort_key)]


def conjugate_subgroup(U: Subgroup, a: int) -> Subgroup:
    """``a^-1 U a``."""
    G = U.parent
    ai = G.inv(a)
    return Subgroup(G, tuple(sorted({G.prod(ai, u, a) for u in U.members})))


def intersect(U: Subgroup, V: Subgroup) -> Subgroup:
    return Subgroup(U.parent, tuple(sorted(U.member_set & V.member_set)))


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    try:
        make_subgroup(G, members)
    except NotASubgroup:
        return False
    return True


def _greedy_generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = frozenset([0])
    for a in G.elements():
        if a not in span:
            gens.append(a)
            span = generated_subgroup(G, gens)
    return gens


def group_isomorphisms(G: FiniteGroup, H: FiniteGroup) -> Iterator[GroupHom]:
    """Yield every group isomorphism ``G -> H`` (generator-image search)."""
    if G.order != H.order:
        return
    gens = _greedy_generators(G)
    candidates = [[h for h in H.elements() if H.element_order(h) == G.element_order(g)] for g in gens]
    for images in itertools.product(*candidates):
        phi = {0: 0}
        queue = deque([0])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for g, img in zip(gens, images):
                y = G.mul(x, g)
                val = H.mul(phi[x], img)
                if y in phi:
                    if phi[y] != val:
                        ok = False
                        break
                else:
                    phi[y] = val
                    queue.append(y)
        if not ok or len(set(phi.values())) != G.order:
            continue
        fmap = tuple(phi[a] for a in G.elements())
        if all(fmap[G.mul(a, b)] == H.mul(fmap[a], fmap[b]) for a in G.elements() for b in G.elements()):
            yield GroupHom(G, H, fmap)

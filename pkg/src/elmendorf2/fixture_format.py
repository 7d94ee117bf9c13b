"""Line-oriented fixture documents.

A document is a list of sections.  A section starts with a header
``[kind name]`` (``[bounds]`` takes no name) and holds one entry per
line, ``key arg arg ...``.  ``#`` starts a comment.  Integer tables are
written one row per line, repeating the key::

    [group Z2]
    mul 0 1
    mul 1 0

    [twogroup D2]
    discrete Z2

    [action reg]
    group D2
    regular

Parsing is purely syntactic; :class:`Workspace` resolves references and
builds the structures, raising :class:`ParseError` (with line and column)
for unresolved names or malformed entries and the validators' own errors
for structures that fail their axioms.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field

from . import grp
from .action import GAction, discrete_action, regular_action, trivial_action, validate_action
from .bounds import DEFAULT_BOUNDS, Bounds
from .catkit import CatPresheaf, FinCat, discrete_category, make_category, terminal_category, walking_arrow
from .errors import AxiomViolation, ParseError
from .orbit import OrbitTwoCat, build_orbit_2cat
from .twogroup import (
    CrossedModule,
    TwoGroup,
    discrete_two_group,
    from_crossed_module,
    identity_crossed_module,
    one_object_two_group,
    trivial_two_group,
    validate_crossed_module,
    validate_two_group,
)

KINDS = ("bounds", "group", "category", "crossed_module", "twogroup", "action", "presheaf", "orbit")


@dataclass(frozen=True)
class Entry:
    key: str
    args: tuple[str, ...]
    line: int
    columns: tuple[int, ...]  # column of the key, then of each argument

    def column(self, k: int) -> int:
        """Column of argument ``k`` (or just past the line end)."""
        return self.columns[k + 1] if k + 1 < len(self.columns) else self.columns[-1] + len(self.key)


@dataclass
class Section:
    kind: str
    name: str
    line: int
    entries: list[Entry] = field(default_factory=list)

    def find(self, key: str) -> list[Entry]:
        return [e for e in self.entries if e.key == key]

    def first(self, key: str) -> Entry | None:
        found = self.find(key)
        return found[0] if found else None


@dataclass
class FixtureDoc:
    sections: list[Section] = field(default_factory=list)

    def of_kind(self, kind: str) -> list[Section]:
        return [s for s in self.sections if s.kind == kind]

    def get(self, kind: str, name: str) -> Section | None:
        for s in self.sections:
            if s.kind == kind and s.name == name:
                return s
        return None

    def digest(self) -> str:
        return hashlib.sha256(dump_fixture(self).encode()).hexdigest()


def _tokens(text: str) -> list[tuple[str, int]]:
    out, k = [], 0
    while k < len(text):
        if text[k].isspace():
            k += 1
            continue
        start = k
        while k < len(text) and not text[k].isspace():
            k += 1
        out.append((text[start:k], start + 1))
    return out


def parse_fixture(text: str) -> FixtureDoc:
    doc = FixtureDoc()
    current: Section | None = None
    seen: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        col = len(line) - len(stripped) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("section header must end with ']'", lineno, col + len(stripped))
            words = stripped[1:-1].split()
            if not words or words[0] not in KINDS:
                raise ParseError(f"unknown section kind {words[0] if words else ''!r}", lineno, col + 1)
            kind = words[0]
            if kind == "bounds":
                if len(words) != 1:
                    raise ParseError("[bounds] takes no name", lineno, col)
                name = ""
            elif len(words) != 2:
                raise ParseError(f"[{kind}] needs exactly one name", lineno, col)
            else:
                name = words[1]
            if (kind, name) in seen:
                raise ParseError(f"duplicate section [{kind} {name}]".replace(" ]", "]"), lineno, col)
            seen.add((kind, name))
            current = Section(kind, name, lineno)
            doc.sections.append(current)
            continue
        if current is None:
            raise ParseError("entry outside of any section", lineno, col)
        toks = _tokens(line)
        current.entries.append(Entry(toks[0][0], tuple(t for t, _ in toks[1:]), lineno, tuple(c for _, c in toks)))
    return doc


def dump_fixture(doc: FixtureDoc) -> str:
    """Canonical text; ``parse_fixture(dump_fixture(d))`` dumps to the same text."""
    blocks = []
    for s in doc.sections:
        header = "[bounds]" if s.kind == "bounds" else f"[{s.kind} {s.name}]"
        blocks.append("\n".join([header] + [" ".join((e.key,) + e.args) for e in s.entries]))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def _entry(key: str, *args) -> Entry:
    return Entry(key, tuple(str(a) for a in args), 0, (1,))


# ---------------------------------------------------------------------------
# resolution


def _ints(e: Entry, start: int = 0, count: int | None = None) -> list[int]:
    args = e.args[start:] if count is None else e.args[start : start + count]
    if count is not None and len(args) != count:
        raise ParseError(f"'{e.key}' expects {count} integer(s) after position {start}", e.line, e.column(start + len(args)))
    out = []
    for k, a in enumerate(args):
        try:
            out.append(int(a))
        except ValueError:
            raise ParseError(f"expected an integer, got {a!r}", e.line, e.column(start + k)) from None
    return out


def _one_arg(e: Entry) -> str:
    if len(e.args) != 1:
        raise ParseError(f"'{e.key}' expects one argument", e.line, e.column(min(len(e.args), 1)))
    return e.args[0]


class Workspace:
    """Resolves and caches the structures declared in a document."""

    def __init__(self, doc: FixtureDoc, overrides: dict | None = None):
        self.doc = doc
        self._cache: dict = {}
        values = {}
        for s in doc.of_kind("bounds"):
            for e in s.entries:
                values[e.key] = _ints(e, 0, 1)[0]
        try:
            self.bounds: Bounds = DEFAULT_BOUNDS.with_overrides(**{**values, **(overrides or {})})
        except KeyError as exc:
            sec = doc.of_kind("bounds")
            raise ParseError(f"unknown bound {exc.args[0]!r}", sec[0].line if sec else 0, 1) from None

    def _section(self, kind: str, name: str, ref: Entry | None = None, k: int = 0) -> Section:
        s = self.doc.get(kind, name)
        if s is None:
            line, col = (ref.line, ref.column(k)) if ref else (0, 0)
            raise ParseError(f"unknown {kind} {name!r}", line, col)
        return s

    def _cached(self, kind: str, name: str, build):
        key = (kind, name)
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def names(self, kind: str) -> list[str]:
        return [s.name for s in self.doc.of_kind(kind)]

    def build(self, kind: str, name: str):
        return getattr(self, kind)(name)

    # groups and categories

    def group(self, name: str, ref: Entry | None = None) -> grp.FiniteGroup:
        s = self._section("group", name, ref)
        return self._cached("group", name, lambda: self._build_group(s))

    def _build_group(self, s: Section) -> grp.FiniteGroup:
        rows = s.find("mul")
        perms = s.find("perm")
        if rows:
            return grp.validate_group([_ints(e) for e in rows])
        if perms:
            return grp.from_permutations([_ints(e) for e in perms])
        for e in s.entries:
            if e.key == "cyclic":
                return grp.cyclic_group(_ints(e, 0, 1)[0])
            if e.key == "symmetric":
                return grp.symmetric_group(_ints(e, 0, 1)[0])
            if e.key == "trivial":
                return grp.trivial_group()
        raise ParseError("group needs 'mul' rows, 'perm' generators, 'cyclic n', 'symmetric n' or 'trivial'", s.line, 1)

    def category(self, name: str, ref: Entry | None = None) -> FinCat:
        s = self._section("category", name, ref)
        return self._cached("category", name, lambda: self._build_category(s))

    def _build_category(self, s: Section) -> FinCat:
        for e in s.entries:
            if e.key == "discrete":
                return discrete_category(_ints(e, 0, 1)[0])
            if e.key == "terminal":
                return terminal_category()
            if e.key == "walking_arrow":
                return walking_arrow()
        obj = s.first("objects")
        if obj is None:
            raise ParseError("category needs 'objects n' (or 'discrete n', 'terminal', 'walking_arrow')", s.line, 1)
        n = _ints(obj, 0, 1)[0]
        arrows = [tuple(_ints(e, 0, 2)) for e in s.find("arrow")]
        comps = {}
        for e in s.find("compose"):
            g, f, h = _ints(e, 0, 3)
            comps[(g, f)] = h
        return make_category(n, arrows, comps)

    # 2-groups

    def crossed_module(self, name: str, ref: Entry | None = None) -> CrossedModule:
        s = self._section("crossed_module", name, ref)
        return self._cached("crossed_module", name, lambda: self._build_xm(s))

    def _build_xm(self, s: Section) -> CrossedModule:
        ident = s.first("identity")
        if ident is not None:
            return identity_crossed_module(self.group(_one_arg(ident), ident))
        need = {k: s.first(k) for k in ("base", "fiber", "boundary")}
        missing = [k for k, v in need.items() if v is None]
        if missing:
            raise ParseError(f"crossed module lacks {missing[0]!r}", s.line, 1)
        base = self.group(_one_arg(need["base"]), need["base"])
        fiber = self.group(_one_arg(need["fiber"]), need["fiber"])
        return validate_crossed_module(base, fiber, _ints(need["boundary"]), [_ints(e) for e in s.find("act")])

    def twogroup(self, name: str, ref: Entry | None = None) -> TwoGroup:
        s = self._section("twogroup", name, ref)
        return self._cached("twogroup", name, lambda: self._build_twogroup(s))

    def _build_twogroup(self, s: Section) -> TwoGroup:
        for e in s.entries:
            if e.key == "trivial":
                return trivial_two_group()
            if e.key == "discrete":
                return discrete_two_group(self.group(_one_arg(e), e), name=s.name)
            if e.key == "one_object":
                return one_object_two_group(self.group(_one_arg(e), e), name=s.name)
            if e.key == "crossed_module":
                return from_crossed_module(self.crossed_module(_one_arg(e), e), name=s.name)
        need = {k: s.first(k) for k in ("objects", "arrows", "d0", "d1", "i")}
        missing = [k for k, v in need.items() if v is None]
        if missing:
            raise ParseError(f"2-group lacks {missing[0]!r}", s.line, 1)
        G0 = self.group(_one_arg(need["objects"]), need["objects"])
        G1 = self.group(_one_arg(need["arrows"]), need["arrows"])
        comp = {}
        for e in s.find("comp"):
            g, f, h = _ints(e, 0, 3)
            comp[(g, f)] = h
        return validate_two_group(G0, G1, _ints(need["d0"]), _ints(need["d1"]), _ints(need["i"]), comp, name=s.name)

    def site(self, tg_name: str, identify: bool = True, ref: Entry | None = None) -> OrbitTwoCat:
        G = self.twogroup(tg_name, ref)
        return self._cached("site", (tg_name, identify), lambda: build_orbit_2cat(G, self.bounds, identify=identify))

    def _group_of(self, s: Section) -> tuple[str, TwoGroup]:
        e = s.first("group")
        if e is None:
            raise ParseError(f"[{s.kind} {s.name}] needs 'group NAME'", s.line, 1)
        return _one_arg(e), self.twogroup(_one_arg(e), e)

    def group_of(self, kind: str, name: str) -> str:
        return self._group_of(self._section(kind, name))[0]

    # actions

    def action(self, name: str, ref: Entry | None = None) -> GAction:
        s = self._section("action", name, ref)
        return self._cached("action", name, lambda: self._build_action(s))

    def _build_action(self, s: Section) -> GAction:
        tg, G = self._group_of(s)
        for e in s.entries:
            if e.key == "regular":
                return regular_action(G, name=s.name)
            if e.key == "trivial":
                return trivial_action(G, self.category(_one_arg(e), e), name=s.name)
            if e.key == "coset":
                S = self.site(tg)
                k = _ints(e, 0, 1)[0]
                if not 0 <= k < S.n_objects:
                    raise ParseError(f"sub-2-group index {k} out of range", e.line, e.column(0))
                return S.cosets[k].action
            if e.key == "discrete":
                return discrete_action(G, [_ints(r) for r in s.find("obj_act")], name=s.name)
        space = s.first("space")
        if space is None:
            raise ParseError("action needs 'regular', 'trivial CAT', 'coset k', 'discrete' or 'space CAT'", s.line, 1)
        X = self.category(_one_arg(space), space)
        return validate_action(G, X, [_ints(r) for r in s.find("obj_act")], [_ints(r) for r in s.find("arr_act")], name=s.name)

    # presheaves

    def presheaf_site(self, name: str) -> tuple[str, OrbitTwoCat]:
        s = self._section("presheaf", name)
        tg, _ = self._group_of(s)
        mode = s.first("site")
        identify = True
        if mode is not None:
            word = _one_arg(mode)
            if word not in ("identified", "raw"):
                raise ParseError("site must be 'identified' or 'raw'", mode.line, mode.column(0))
            identify = word == "identified"
        return tg, self.site(tg, identify)

    def expectation(self, name: str) -> str:
        e = self._section("presheaf", name).first("expect")
        if e is None:
            return "sheaf"
        word = _one_arg(e)
        if word not in ("sheaf", "nonsheaf"):
            raise ParseError("expect must be 'sheaf' or 'nonsheaf'", e.line, e.column(0))
        return word

    def presheaf(self, name: str, ref: Entry | None = None) -> CatPresheaf:
        s = self._section("presheaf", name, ref)
        return self._cached("presheaf", name, lambda: self._build_presheaf(s))

    def _build_presheaf(self, s: Section) -> CatPresheaf:
        from .equivalence import phi
        from .sheaf import constant_presheaf, discrete_valued_presheaf, representable, terminal_presheaf

        self.expectation(s.name)
        _, S = self.presheaf_site(s.name)
        T = S.two_cat
        for e in s.entries:
            if e.key == "terminal":
                return terminal_presheaf(T)
            if e.key == "representable":
                k = _ints(e, 0, 1)[0]
                if not 0 <= k < T.n_objects:
                    raise ParseError(f"object {k} out of range", e.line, e.column(0))
                return representable(T, k)
            if e.key == "phi":
                X = self.action(_one_arg(e), e)
                if X.group != S.group:
                    raise ParseError("action is over a different 2-group", e.line, e.column(0))
                return phi(X, S, self.bounds).presheaf
            if e.key == "constant":
                return constant_presheaf(T, self.category(_one_arg(e), e))
        sizes_e = s.first("sizes")
        if sizes_e is None:
            raise ParseError("presheaf needs 'terminal', 'representable k', 'phi ACTION', 'constant CAT' or 'sizes' + 'map' rows", s.line, 1)
        sizes = _ints(sizes_e)
        if len(sizes) != T.n_objects:
            raise ParseError(f"'sizes' needs {T.n_objects} entries", sizes_e.line, sizes_e.column(len(sizes)))
        maps = {}
        for e in s.find("map"):
            a, b, A = _ints(e, 0, 3)
            if (a, b) not in T.hom or not S.has_morphism(a, b, A):
                raise ParseError(f"{A} is not a 1-cell {a} -> {b}", e.line, e.column(2))
            values = tuple(_ints(e, 3))
            key = (a, b, S.morphism_index(a, b, A))
            if maps.setdefault(key, values) != values:
                raise ParseError("conflicting values for the same 1-cell", e.line, e.column(3))
        for a, b in itertools.product(T.objects(), repeat=2):
            for f in T.hom[(a, b)].objects():
                if (a, b, f) not in maps:
                    if a == b and f == T.identity[a]:
                        maps[(a, b, f)] = tuple(range(sizes[a]))
                    else:
                        raise ParseError(f"missing 'map {a} {b} ...' for 1-cell {S.hom_objects[(a, b)][f]}", s.line, 1)
        return discrete_valued_presheaf(T, sizes, maps)

    # orbit dumps

    def orbit(self, name: str, ref: Entry | None = None) -> OrbitTwoCat:
        """Rebuild ``S(G)`` and check it against the tables in the section."""
        s = self._section("orbit", name, ref)
        return self._cached("orbit", name, lambda: self._build_orbit(s))

    def _build_orbit(self, s: Section) -> OrbitTwoCat:
        tg, _ = self._group_of(s)
        mode = s.first("site")
        identify = mode is not None and _one_arg(mode) == "identified"
        S = self.site(tg, identify)
        got = orbit_section(s.name, tg, S)
        want = [(e.key, e.args) for e in s.entries]
        have = [(e.key, e.args) for e in got.entries]
        if want != have:
            for (k1, a1), (k2, a2), e in zip(want, have, s.entries):
                if (k1, a1) != (k2, a2):
                    raise AxiomViolation(f"orbit table differs at line {e.line}: expected {k2} {' '.join(a2)}", (e.line, k2, a2))
            raise AxiomViolation("orbit table has a different number of entries", (len(want), len(have)))
        return S


def orbit_section(name: str, tg_name: str, S: OrbitTwoCat) -> Section:
    """Dump ``S(G)`` as an ``[orbit]`` section: sub-2-groups, then 1-cell and 2-cell representatives per hom."""
    sec = Section("orbit", name, 0)
    sec.entries.append(_entry("group", tg_name))
    sec.entries.append(_entry("site", "identified" if S.identified else "raw"))
    for k, U in enumerate(S.subs):
        sec.entries.append(_entry("sub", k, "objects", *U.U0.members, "arrows", *U.U1.members))
    for u, v in itertools.product(S.objects(), repeat=2):
        sec.entries.append(_entry("hom", u, v, *S.hom_objects[(u, v)]))
        sec.entries.append(_entry("cells", u, v, *S.hom_arrows[(u, v)]))
    return sec


def load_fixture(path: str, overrides: dict | None = None) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return Workspace(parse_fixture(fh.read()), overrides)

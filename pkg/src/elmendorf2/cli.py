"""Command-line entry point.

Exit status: 0 when every check passes, 1 when some check fails, 3 when
the fixture file cannot be read or parsed.
"""

from __future__ import annotations

import argparse
import hashlib
import sys

from . import __version__
from .catkit import discrete_category, make_category, terminal_category, walking_arrow
from .errors import ElmendorfError, ParseError
from .fixture_format import FixtureDoc, Workspace, dump_fixture, load_fixture, orbit_section, parse_fixture
from .report import Report, jsonable

EXIT_OK, EXIT_FAILED, EXIT_PARSE = 0, 1, 3


def _digest(W: Workspace) -> str:
    text = dump_fixture(W.doc) + repr(sorted(W.bounds.as_dict().items()))
    return hashlib.sha256(text.encode()).hexdigest()


def _error_witness(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "message": str(exc), "witness": jsonable(getattr(exc, "witness", None))}


def test_categories() -> list[tuple[str, object]]:
    """Small targets for the universal-property check (at most 2 objects, 4 arrows)."""
    return [
        ("point", terminal_category()),
        ("two_points", discrete_category(2)),
        ("arrow", walking_arrow()),
        ("iso", make_category(2, [(0, 1), (1, 0)], {(2, 3): 1, (3, 2): 0})),
        ("z2", make_category(1, [(0, 0)], {(1, 1): 0})),
    ]


# ---------------------------------------------------------------------------
# commands


def cmd_validate(W: Workspace) -> Report:
    report = Report(_digest(W))
    for kind in ("group", "category", "crossed_module", "twogroup", "action", "presheaf", "orbit"):
        for name in W.names(kind):
            line = W.doc.get(kind, name).line
            with report.timed(f"validate[{kind}:{name}]", "structure axioms") as e:
                try:
                    W.build(kind, name)
                    e.passed = True
                except ParseError:
                    raise
                except ElmendorfError as exc:
                    e.passed, e.witness = False, dict(_error_witness(exc), line=line)
    return report


def _sites_for(W: Workspace, group: str | None) -> list[str]:
    names = W.names("twogroup")
    if group is not None:
        if group not in names:
            raise ParseError(f"unknown twogroup {group!r}", 0, 0)
        return [group]
    return names


def cmd_orbit(W: Workspace, group: str | None = None, raw: bool = False, dump: str | None = None) -> Report:
    from .orbit import realization_two_functor, right_ore_check

    report = Report(_digest(W))
    sections = []
    for tg in _sites_for(W, group):
        tag = f"{tg}{':raw' if raw else ''}"
        with report.timed(f"orbit.build[{tag}]", "Construction of S(G)") as e:
            S = W.site(tg, identify=not raw)
            e.passed = True
            e.witness = {
                "objects": S.n_objects,
                "homs": {f"{u},{v}": [S.hom(u, v).n_objects, S.hom(u, v).n_arrows] for u in S.objects() for v in S.objects()},
            }
        if not e.passed:
            continue
        with report.timed(f"orbit.right_ore[{tag}]", "Right Ore Condition") as e:
            ok, _ = right_ore_check(S)
            e.passed = ok
        with report.timed(f"orbit.realization[{tag}]", "realization 2-functor S(G) -> BG") as e:
            realization_two_functor(S, W.bounds)
            e.passed = True
        sections.append(orbit_section(f"S_{tg}{'_raw' if raw else ''}", tg, S))
    if dump is not None:
        doc = FixtureDoc(list(W.doc.sections) + sections)
        text = dump_fixture(doc)
        with open(dump, "w", encoding="utf-8") as fh:
            fh.write(text)
        with report.timed("orbit.dump_roundtrip", "fixture format") as e:
            again = Workspace(parse_fixture(text), W.bounds.as_dict())
            for sec in sections:
                again.orbit(sec.name)
            e.passed = dump_fixture(again.doc) == text
    return report


def cmd_sheaf_check(W: Workspace, presheaf: str | None = None) -> Report:
    from .sheaf import atomic_injectivity_check, atomic_topology, is_2sheaf, nonempty_topology, topology_axioms

    report = Report(_digest(W))
    names = W.names("presheaf") if presheaf is None else [presheaf]
    if presheaf is not None and presheaf not in W.names("presheaf"):
        raise ParseError(f"unknown presheaf {presheaf!r}", 0, 0)
    checked_sites = set()
    for name in names:
        tg, S = W.presheaf_site(name)
        if id(S) not in checked_sites:
            checked_sites.add(id(S))
            site_tag = f"{tg}{'' if S.identified else ':raw'}"
            with report.timed(f"topology_axioms[{site_tag}]", "Def. (groth top)") as e:
                J = atomic_topology(S.two_cat)
                axioms = topology_axioms(J)
                e.passed = all(v is None for v in axioms.values())
                e.witness = None if e.passed else axioms
            with report.timed(f"topology_singletons_vs_nonempty[{site_tag}]", "Example (atomic 2-topology)") as e:
                e.passed = True
                e.witness = {"same_covers": J.covers == nonempty_topology(S.two_cat).covers}
        with report.timed(f"is_2sheaf[{name}]", "Eq. (2-sheaf isomor)") as e:
            F = W.presheaf(name)
            e.passed, e.witness = is_2sheaf(F, bounds=W.bounds)
        with report.timed(f"atomic_injectivity[{name}]", "Lemma (atomic top lemma)") as e:
            e.passed, e.witness = atomic_injectivity_check(W.presheaf(name))
    return report


def cmd_equivalence(W: Workspace, group: str | None = None, check_2colimit: bool = False) -> Report:
    from . import classical
    from .equivalence import compare_with_classical, unit, unit_is_iso_check, verify_main_theorem
    from .orbit import right_ore_check
    from .sheaf import atomic_topology, is_2sheaf, topology_axioms

    report = Report(_digest(W))
    for tg in _sites_for(W, group):
        with report.timed(f"site[{tg}]", "Construction of S(G)") as e:
            S = W.site(tg, identify=True)
            e.passed = True
        if not e.passed:
            continue
        report.add(f"right_ore[{tg}]", "Right Ore Condition", right_ore_check(S)[0])
        axioms = topology_axioms(atomic_topology(S.two_cat))
        report.add(f"topology_axioms[{tg}]", "Def. (groth top)", all(v is None for v in axioms.values()), None if all(v is None for v in axioms.values()) else axioms)
        actions = []
        for name in W.names("action"):
            if W.group_of("action", name) == tg:
                with report.timed(f"load_action[{tg}:{name}]", "Def. action") as e:
                    actions.append((name, W.action(name)))
                    e.passed = True
        sheaves = []
        for name in W.names("presheaf"):
            if W.group_of("presheaf", name) != tg:
                continue
            _, site = W.presheaf_site(name)
            if site is not S:
                continue
            expect = W.expectation(name)
            if expect == "sheaf":
                with report.timed(f"sheaf_fixture[{tg}:{name}]", "Def. (defn 2-sheaf)") as e:
                    F = W.presheaf(name)
                    e.passed, e.witness = is_2sheaf(F, bounds=W.bounds)
                if e.passed:
                    sheaves.append((name, F))
            else:
                with report.timed(f"nonsheaf_detected[{tg}:{name}]", "Lemma (atomic top lemma)") as e:
                    F = W.presheaf(name)
                    sheaf, sw = is_2sheaf(F, bounds=W.bounds)
                    iso, uw = unit_is_iso_check(unit(F, S, W.bounds))
                    injective_fails = any("injective_on_objects" in v for v in uw.values())
                    e.passed = not sheaf and not iso and injective_fails
                    e.witness = {"sheaf_witness": sw, "unit_defects": uw}
        verify_main_theorem(
            S,
            actions,
            sheaves,
            report,
            W.bounds,
            check_2colimit=check_2colimit,
            test_categories=test_categories(),
            prefix=f"{tg}:",
        )
        sec = W.doc.get("twogroup", tg)
        disc = sec.first("discrete")
        if disc is not None:
            G = W.group(disc.args[0], disc)
            gsets = [X for n in range(1, 4) for X in classical.enumerate_gsets(G, n)]
            classical.verify_classical_equivalence(G, gsets, (), report)
            compare_with_classical(G, gsets, report, W.bounds)
    return report


# ---------------------------------------------------------------------------
# argument handling


def _parse_bounds(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"--bounds expects key=value, got {item!r}")
        out[key.strip()] = int(value)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elmendorf2", description="Verify finite strict 2-group actions against sheaves on the orbit 2-category.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixtures", required=True, help="fixture document")
    common.add_argument("--report", help="write the JSON report here instead of stdout")
    common.add_argument("--bounds", nargs="*", default=[], metavar="KEY=VAL", help="override enumeration bounds")
    common.add_argument("--timing", action="store_true", help="include per-check timings (reports stop being byte-stable)")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="load and validate every declared structure")
    o = sub.add_parser("orbit", parents=[common], help="build S(G), check Ore and the realization")
    o.add_argument("--group", help="2-group name (default: all)")
    o.add_argument("--raw", action="store_true", help="keep parallel 1-cells with equal realizations apart")
    o.add_argument("--dump", help="write the fixture document plus [orbit] tables here")
    s = sub.add_parser("sheaf-check", parents=[common], help="2-sheaf condition for declared presheaves")
    s.add_argument("--presheaf", help="presheaf name (default: all)")
    e = sub.add_parser("equivalence", parents=[common], help="full verification of Sh(S(G)) ~ BG")
    e.add_argument("--group", help="2-group name (default: all)")
    e.add_argument("--check-2colimit", action="store_true", help="also check the colimit's universal property")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        W = load_fixture(args.fixtures, _parse_bounds(args.bounds))
        if args.command == "validate":
            report = cmd_validate(W)
        elif args.command == "orbit":
            report = cmd_orbit(W, args.group, args.raw, args.dump)
        elif args.command == "sheaf-check":
            report = cmd_sheaf_check(W, args.presheaf)
        else:
            report = cmd_equivalence(W, args.group, args.check_2colimit)
    except (ParseError, OSError, ValueError) as exc:
        print(f"elmendorf2: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = report.to_json(with_timing=args.timing)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for c in report.failures():
        print(f"FAILED {c.check}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

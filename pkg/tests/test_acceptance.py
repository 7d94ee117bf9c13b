"""Acceptance criteria, one timed check each.

Run under pytest (the PASS/FAIL lines appear in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from elmendorf2 import grp  # noqa: E402
from elmendorf2.catkit import functor_defects  # noqa: E402
from elmendorf2.classical import enumerate_gsets, verify_classical_equivalence  # noqa: E402
from elmendorf2.cli import cmd_equivalence  # noqa: E402
from elmendorf2.cli import test_categories as small_categories  # noqa: E402
from elmendorf2.equivalence import (  # noqa: E402
    compare_with_classical,
    counit,
    counit_equivariance_identity,
    fixed_point_iso,
    phi,
    unit,
    unit_is_iso_check,
    verify_2colimit_universal,
)
from elmendorf2.errors import InterchangeViolation  # noqa: E402
from elmendorf2.fixture_format import load_fixture  # noqa: E402
from elmendorf2.fixtures import BUNDLED, bundled_path  # noqa: E402
from elmendorf2.sheaf import is_2sheaf  # noqa: E402
from elmendorf2.twogroup import (  # noqa: E402
    crossed_module_isomorphisms,
    enumerate_sub_two_groups,
    from_crossed_module,
    to_crossed_module,
)

from oracles import brute_sub_two_groups  # noqa: E402

RESULTS: list[str] = []


def fresh(doc):
    return load_fixture(bundled_path(doc))


def fixture_actions(W):
    return [(n, W.action(n)) for n in W.names("action")]


def c1_structure():
    for doc, tg in BUNDLED.items():
        fresh(doc).twogroup(tg)
    try:
        fresh("s3_candidate").twogroup("ONE_S3")
    except InterchangeViolation as exc:
        return len(exc.witness) == 4, f"interchange witness {exc.witness}"
    return False, "S3 candidate validated"


def c2_counts():
    counts = {}
    for doc, tg in BUNDLED.items():
        G = fresh(doc).twogroup(tg)
        subs = enumerate_sub_two_groups(G)
        if {(U.U0.member_set, U.U1.member_set) for U in subs} != brute_sub_two_groups(G):
            return False, f"{tg} differs from the oracle"
        counts[tg] = len(subs)
    return counts == {"T": 1, "D2": 2, "D3": 2, "ONE2": 2, "XM": 3}, str(counts)


def c3_fixed_points():
    n = 0
    for doc, tg in BUNDLED.items():
        W = fresh(doc)
        S = W.site(tg)
        for _, X in fixture_actions(W):
            for u in S.objects():
                fixed_point_iso(S, u, X)
                n += 1
    return True, f"{n} (U, X) pairs, both composites identities"


def c4_counit():
    n = 0
    for doc, tg in BUNDLED.items():
        W = fresh(doc)
        S = W.site(tg)
        for name, X in fixture_actions(W):
            P = phi(X, S)
            _, L = counit(P)
            ok, w = counit_equivariance_identity(P, L)
            if not ok:
                return False, f"{doc}:{name} {w}"
            n += 1
    return True, f"{n} actions"


def c5_sheaf_condition():
    n = 0
    for doc, tg in BUNDLED.items():
        W = fresh(doc)
        S = W.site(tg)
        for name, X in fixture_actions(W):
            ok, w = is_2sheaf(phi(X, S).presheaf)
            if not ok:
                return False, f"phi({doc}:{name}) {w}"
            n += 1
    W = fresh("d2")
    F = W.presheaf("nonsheaf")
    sheaf, _ = is_2sheaf(F)
    iso, defects = unit_is_iso_check(unit(F, W.site("D2")))
    injective = [u for u, d in defects.items() if "injective_on_objects" in d]
    return (not sheaf and not iso and bool(injective)), f"{n} phi sheaves; nonsheaf injectivity witness at {injective}"


def c6_unit():
    n = 0
    for doc, tg in BUNDLED.items():
        W = fresh(doc)
        for name in W.names("presheaf"):
            if W.expectation(name) != "sheaf":
                continue
            _, S = W.presheaf_site(name)
            eta = unit(W.presheaf(name), S)
            for c in eta.transformation.components:
                d = functor_defects(c)
                if any(v is not None for v in d.values()):
                    return False, f"{doc}:{name} {d}"
                n += 1
    return True, f"{n} unit components"


def c7_degeneration():
    total = 0
    for k in (2, 3, 4):
        G = grp.cyclic_group(k)
        gsets = [X for m in (1, 2, 3) for X in enumerate_gsets(G, m)]
        R = verify_classical_equivalence(G, gsets)
        compare_with_classical(G, gsets, R)
        if not R.passed:
            return False, f"Z/{k}: {[c.check for c in R.failures()]}"
        total += len(gsets)
    return True, f"{total} G-sets"


def c8_2colimit():
    W = fresh("d2")
    S = W.site("D2")
    n = 0
    for name, X in fixture_actions(W):
        F = phi(X, S).presheaf
        for aname, A in small_categories():
            if A.n_objects > 2 or A.n_arrows > 4:
                continue
            ok, sizes = verify_2colimit_universal(F, S, A)
            if not ok:
                return False, f"{name}/{aname} {sizes}"
            n += 1
    return True, f"{n} (F, A) pairs"


def c9_round_trip():
    n = 0
    for doc in list(BUNDLED) + ["s3_candidate"]:
        W = fresh(doc)
        for name in W.names("crossed_module"):
            xm = W.crossed_module(name)
            if next(crossed_module_isomorphisms(xm, to_crossed_module(from_crossed_module(xm))), None) is None:
                return False, name
            n += 1
    return n > 0, f"{n} crossed modules"


def c10_determinism():
    for doc in BUNDLED:
        a = cmd_equivalence(fresh(doc)).to_json()
        b = cmd_equivalence(fresh(doc)).to_json()
        if a != b:
            return False, doc
    return True, f"{len(BUNDLED)} fixtures byte-identical"


CRITERIA = [
    (1, "structure validation", c1_structure, 1.0),
    (2, "sub-2-group counts", c2_counts, 1.0),
    (3, "fixed-point isomorphism", c3_fixed_points, 10.0),
    (4, "counit", c4_counit, 30.0),
    (5, "sheaf condition", c5_sheaf_condition, 30.0),
    (6, "unit on sheaves", c6_unit, 30.0),
    (7, "degeneration oracle", c7_degeneration, 60.0),
    (8, "2-colimit universal property", c8_2colimit, 120.0),
    (9, "crossed-module round trip", c9_round_trip, 1.0),
    (10, "determinism", c10_determinism, None),
]


def evaluate(number, title, fn, limit):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported as a failure, with the reason
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    in_time = limit is None or elapsed < limit
    bound = "no limit" if limit is None else f"< {limit:g}s"
    verdict = "PASS" if ok and in_time else "FAIL"
    line = f"{verdict} criterion {number:>2} {title}: {elapsed:.3f}s ({bound}); {detail}"
    return ok and in_time, line


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"c{n}" for n, *_ in CRITERIA])
def test_criterion(number, title, fn, limit):
    ok, line = evaluate(number, title, fn, limit)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

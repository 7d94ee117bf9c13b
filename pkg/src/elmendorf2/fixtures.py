"""The bundled fixture documents, loaded through the fixture format."""

from __future__ import annotations

import os
from functools import lru_cache

from .fixture_format import Workspace, load_fixture

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# document file -> name of its 2-group
BUNDLED = {
    "trivial": "T",
    "d2": "D2",
    "d3": "D3",
    "one2": "ONE2",
    "xm": "XM",
}


def bundled_path(name: str) -> str:
    return os.path.join(DATA_DIR, f"{name}.e2")


@lru_cache(maxsize=None)
def workspace(name: str) -> Workspace:
    return load_fixture(bundled_path(name))


def two_groups() -> dict:
    """The five fixture 2-groups, keyed by their names."""
    return {tg: workspace(doc).twogroup(tg) for doc, tg in BUNDLED.items()}


def s3_candidate():
    """The document declaring the one-object 2-group on S3, which must fail interchange."""
    return workspace("s3_candidate")


def actions(doc: str) -> list[tuple[str, object]]:
    W = workspace(doc)
    return [(n, W.action(n)) for n in W.names("action")]


def presheaves(doc: str, expect: str | None = None) -> list[tuple[str, object]]:
    W = workspace(doc)
    return [(n, W.presheaf(n)) for n in W.names("presheaf") if expect is None or W.expectation(n) == expect]


def site(doc: str, identify: bool = True):
    return workspace(doc).site(BUNDLED[doc], identify)

"""Verification reports with a stable JSON rendering."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .errors import ParseError


def jsonable(value: Any) -> Any:
    """Witnesses may hold tuples, frozensets or dicts with tuple keys; normalize them."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in sorted(value.items(), key=lambda kv: repr(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [jsonable(v) for v in sorted(value, key=repr)]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return repr(value)


@dataclass
class CheckResult:
    check: str
    anchor: str
    passed: bool
    witness: Any = None
    timing: float | None = None

    def as_dict(self, with_timing: bool = False) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "passed": self.passed,
            "witness": jsonable(self.witness),
            "timing": round(self.timing, 6) if with_timing and self.timing is not None else None,
        }


@dataclass
class Report:
    fixture_digest: str = ""
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, anchor: str, passed: bool, witness: Any = None, timing: float | None = None) -> CheckResult:
        entry = CheckResult(check, anchor, bool(passed), witness, timing)
        self.checks.append(entry)
        return entry

    @contextmanager
    def timed(self, check: str, anchor: str, propagate: tuple = (ParseError,)):
        """Run a block that fills ``entry.passed``/``entry.witness``; exceptions become failures.

        Exceptions of the types in ``propagate`` are re-raised without recording; a
        malformed fixture is not a verification outcome.
        """
        entry = CheckResult(check, anchor, False)
        start = time.perf_counter()
        try:
            yield entry
        except propagate:
            raise
        except Exception as exc:  # recorded, not swallowed silently
            entry.passed = False
            entry.witness = {"error": type(exc).__name__, "message": str(exc), "witness": jsonable(getattr(exc, "witness", None))}
        entry.timing = time.perf_counter() - start
        self.checks.append(entry)

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def n_failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def passed(self) -> bool:
        return self.n_failed == 0

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self, with_timing: bool = False) -> dict:
        return {
            "tool_version": __version__,
            "fixture_digest": self.fixture_digest,
            "checks": [c.as_dict(with_timing) for c in self.checks],
            "summary": {"total": len(self.checks), "passed": len(self.checks) - self.n_failed, "failed": self.n_failed},
        }

    def to_json(self, with_timing: bool = False) -> str:
        return json.dumps(self.as_dict(with_timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

"""Enumeration bounds.

Every exhaustive search in the package consults a :class:`Bounds` value.
Exceeding a bound raises :class:`~elmendorf2.errors.SizeBoundExceeded`;
results are never silently truncated.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import SizeBoundExceeded


@dataclass(frozen=True)
class Bounds:
    max_group_order: int = 12
    max_arrow_group_order: int = 16
    max_space_objects: int = 8
    max_space_arrows: int = 16
    # |C_1| * |D_1| guard for functor enumeration, and the cap on search
    # nodes visited by any single backtracking enumeration
    max_functor_candidates: int = 10**6

    def with_overrides(self, **overrides: int) -> "Bounds":
        names = {f.name for f in dataclasses.fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise KeyError(f"unknown bound(s): {sorted(unknown)}")
        return dataclasses.replace(self, **{k: int(v) for k, v in overrides.items()})

    def as_dict(self) -> dict[str, int]:
        return dataclasses.asdict(self)


DEFAULT_BOUNDS = Bounds()


def check_bound(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise SizeBoundExceeded(f"{what} = {value} exceeds bound {limit}", (what, value, limit))

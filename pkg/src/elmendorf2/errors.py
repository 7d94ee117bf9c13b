"""Exception hierarchy shared by every module.

Every validation failure carries a ``witness``: the concrete elements,
objects or arrows at which an axiom breaks.
"""

from __future__ import annotations

from typing import Any


class ElmendorfError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class AxiomViolation(ElmendorfError):
    pass


# finite groups
class NotAssociative(AxiomViolation):
    pass


class NoIdentity(AxiomViolation):
    pass


class NoInverse(AxiomViolation):
    pass


class NotHomomorphic(AxiomViolation):
    pass


class NotASubgroup(AxiomViolation):
    pass


# 2-groups
class InterchangeViolation(AxiomViolation):
    pass


class CategoryAxiomViolation(AxiomViolation):
    pass


class CrossedModuleViolation(AxiomViolation):
    pass


class NotASubTwoGroup(AxiomViolation):
    pass


# actions
class NotFunctorial(AxiomViolation):
    pass


class UnitLawViolation(AxiomViolation):
    pass


class AssociativityViolation(AxiomViolation):
    pass


class NotEquivariant(AxiomViolation):
    pass


class NotCompatible(AxiomViolation):
    pass


# orbit / sheaf / colimit
class WellDefinednessViolation(AxiomViolation):
    pass


class InvalidMorphism(ElmendorfError):
    pass


class SquareMismatch(AxiomViolation):
    pass


class NotComposable(ElmendorfError):
    pass


class SizeBoundExceeded(ElmendorfError):
    pass


class ParseError(ElmendorfError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}", (line, column))
        self.line = line
        self.column = column

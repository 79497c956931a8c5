"""Exception hierarchy.

Every error raised on purpose by the library derives from ``SemitorError``.
The CLI maps the three families below onto process exit codes.
"""

from __future__ import annotations


class SemitorError(Exception):
    """Base class."""


class InvalidInput(SemitorError):
    """Malformed or inadmissible input data (exit code 2)."""


class MathematicalRejection(SemitorError):
    """Well-formed input that fails a mathematical precondition (exit code 3)."""


class SearchExhausted(SemitorError):
    """A bounded search ran out of candidates (exit code 4)."""

    def __init__(self, message: str, bound: int):
        super().__init__(message)
        self.bound = bound


# exact arithmetic
class NotSquarefree(InvalidInput):
    pass


class RectNotIsolating(InvalidInput):
    pass


class ZeroInput(MathematicalRejection):
    pass


class ZeroDivisorFound(MathematicalRejection):
    """Inversion hit a zero divisor; ``factor`` divides the modulus."""

    def __init__(self, factor):
        super().__init__(f"modulus is reducible: nontrivial factor {factor}")
        self.factor = factor


class NotRealInput(MathematicalRejection):
    pass


class FieldMismatch(MathematicalRejection):
    pass


# lattices
class NotDiscreteOrRankDeficient(MathematicalRejection):
    pass


class DegenerateSpan(MathematicalRejection):
    pass


class DegenerateV(MathematicalRejection):
    pass


class InHyperplane(MathematicalRejection):
    pass


class NotPrimitive(MathematicalRejection):
    pass


class NormalizationSearchExhausted(SearchExhausted):
    pass


# elliptic curves and orbits
class RealRatio(MathematicalRejection):
    pass


class NotCubicElement(MathematicalRejection):
    pass


class QVanishes(MathematicalRejection):
    pass


class ReducibleCubic(MathematicalRejection):
    pass


# classifier
class NotSplit(MathematicalRejection):
    pass


class WrongOrientation(MathematicalRejection):
    pass


class WitnessSearchExhausted(SearchExhausted):
    pass


class ConsistencyViolation(SemitorError):
    """An internal cross-check disagreed. Always a bug, never an input problem."""

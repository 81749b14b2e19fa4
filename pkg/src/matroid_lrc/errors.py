"""Exception hierarchy.

Every error raised by the library derives from :class:`LRCError`. The three
intermediate classes map onto CLI exit codes: validation problems (2),
search/representation failures (3) and unreadable input (4).
"""

from __future__ import annotations


class LRCError(Exception):
    exit_code = 1


class ValidationError(LRCError, ValueError):
    exit_code = 2


class SearchFailure(LRCError):
    exit_code = 3


class ParseError(LRCError, ValueError):
    exit_code = 4


# finite fields
class NonPrimeP(ValidationError):
    pass


class ReducibleModulus(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class SpecMismatch(ValidationError):
    pass


class DivisionByZero(ValidationError, ZeroDivisionError):
    pass


# matrices / matroids
class UnknownLabel(ValidationError, KeyError):
    def __str__(self):  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class UnknownElement(UnknownLabel):
    pass


class BadParams(ValidationError):
    pass


class NotAForest(ValidationError):
    pass


class LabelCollision(ValidationError):
    pass


class NotARelaxableCircuit(ValidationError):
    pass


# lattices
class GroundTooLarge(ValidationError):
    pass


class ZAxiomViolation(ValidationError):
    pass


class DegenerateLattice(ValidationError):
    pass


class NotCyclic(ValidationError):
    pass


# codes
class EmptyX(ValidationError):
    pass


class ZeroCode(ValidationError):
    pass


class TopNotCyclicFlat(ValidationError):
    pass


# locality
class UnknownCoordinate(UnknownLabel):
    pass


class SearchBudgetExceeded(SearchFailure):
    pass


class OutsideP(BadParams):
    pass


# constructions
class ConditionViolated(ValidationError):
    def __init__(self, condition: str, message: str):
        super().__init__(f"condition ({condition}) violated: {message}")
        self.condition = condition


class DivisibilityViolated(BadParams):
    pass


class SubgroupUnavailable(BadParams):
    pass


class RepresentationNotFound(SearchFailure):
    pass

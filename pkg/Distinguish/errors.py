"""
Errors Module - Exception hierarchy shared by the library and the command line.
Each class carries the exit code the CLI reports for it.
"""

from typing import Optional


class CubeCostError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 3


class InputError(CubeCostError, ValueError):
    """The caller asked for something outside the supported domain."""

    exit_code = 3


class BudgetError(CubeCostError):
    """A configured guard or search budget stopped the computation."""

    exit_code = 4


class FormatError(CubeCostError, ValueError):
    """A matrix, label class or cache file could not be parsed."""

    exit_code = 2


class InternalError(CubeCostError):
    """A result failed its own verification. Always a bug."""

    exit_code = 5


# Input errors

class Infeasible(InputError):
    def __init__(self, m: int, n: int, reason: str):
        self.m = m
        self.n = n
        self.reason = reason
        super().__init__(f"no asymmetric {m}x{n} matrix exists: {reason}")


class OutOfRange(InputError):
    pass


class NotTwoDistinguishable(InputError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"Q_{n} is not 2-distinguishable; the cost is defined for n >= 4")


class NotInTable(InputError):
    def __init__(self, m: int, n: int):
        self.m = m
        self.n = n
        super().__init__(f"no tabulated matrix for {m}x{n}")


class PreconditionViolated(InputError):
    """A concatenation precondition does not hold."""

    def __init__(self, reason: str, detail: Optional[str] = None):
        self.reason = reason
        self.detail = detail
        message = reason if detail is None else f"{reason}: {detail}"
        super().__init__(message)


class IsomorphicColumnsInInput(InputError):
    pass


class DuplicateRowsInInput(InputError):
    pass


class EmptyClass(InputError):
    pass


class InsufficientColumns(InputError):
    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(f"requested {requested} padding columns but only {available} exist")


class DimensionMismatch(InputError):
    pass


class InvalidLabelClass(InputError):
    pass


# Budget errors

class SearchBudgetExceeded(BudgetError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"symmetry search exceeded its budget of {budget} nodes")


class BudgetExceeded(BudgetError):
    pass


class WidthGuardExceeded(BudgetError):
    pass


class MemoryGuardExceeded(BudgetError):
    pass


class DimensionGuardExceeded(BudgetError):
    pass


# Internal errors

class ConstructionFailed(InternalError):
    pass


class RecursionInconsistency(InternalError):
    pass


class CertificateMismatch(InternalError):
    pass

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Optional


class HKernelError(Exception):
    """Base class for every error raised by hkernels."""


class UnknownColour(HKernelError, ValueError):
    pass


class DuplicateColour(HKernelError, ValueError):
    pass


class DuplicateVertex(HKernelError, ValueError):
    pass


class UnknownVertex(HKernelError, ValueError):
    pass


class LoopArc(HKernelError, ValueError):
    pass


class SameVertex(HKernelError, ValueError):
    pass


class PatternMismatch(HKernelError, ValueError):
    pass


class NotReflexive(HKernelError, ValueError):
    pass


class NotTransitive(HKernelError, ValueError):
    pass


class NotTwins(HKernelError, ValueError):
    pass


class OddCycleInComplement(HKernelError, ValueError):
    def __init__(self, message: str, cycle: Optional[list] = None):
        super().__init__(message)
        self.cycle = cycle


class NotOddCycle(HKernelError, ValueError):
    pass


class NotInComplement(HKernelError, ValueError):
    pass


class BoundTooLarge(HKernelError, ValueError):
    def __init__(self, message: str, estimate: Optional[int] = None):
        super().__init__(message)
        self.estimate = estimate


class ParseError(HKernelError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.msg = message
        self.line = line
        self.column = column


class BudgetExceeded(HKernelError):
    """Path search gave up; the answer is unknown, not negative."""

    def __init__(self, budget: int, expansions: int):
        super().__init__(f"path search exceeded its budget of {budget} expansions")
        self.budget = budget
        self.expansions = expansions


class CertificateError(HKernelError, AssertionError):
    pass


class MissingBaseWitness(HKernelError):
    pass


class StaleState(HKernelError):
    pass


class Interrupted(HKernelError):
    def __init__(self, message: str, checkpoint: Optional[str] = None, state=None):
        super().__init__(message)
        self.checkpoint = checkpoint
        self.state = state

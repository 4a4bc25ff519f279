"""Exception hierarchy shared by every module of the package."""


class MemvelError(Exception):
    """Base class for all package errors."""


class DomainError(MemvelError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ExprSyntaxError(MemvelError, ValueError):
    """Malformed expression source. ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class UnknownIdentifierError(ExprSyntaxError):
    pass


class EvaluationError(MemvelError, ArithmeticError):
    """An expression produced an undefined or non-finite value."""


class ScheduleRangeError(MemvelError, ValueError):
    """A memory exponent leaves the admissible range (0, 1]."""


class ConvergenceError(MemvelError, ArithmeticError):
    """Quadrature could not reach the requested accuracy."""

    def __init__(self, message, value=None, err_estimate=None):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate


class HypothesisError(MemvelError, ValueError):
    """A hypothesis required by a check does not hold."""

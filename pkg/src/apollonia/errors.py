"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ApolloniaError(Exception):
    """Base class for all library errors."""


class ValidationError(ApolloniaError, ValueError):
    """An input violates a documented precondition (CLI exit code 2)."""


class ArithmeticDomainError(ApolloniaError, ArithmeticError):
    """Exact arithmetic across incompatible quadratic rings."""


class ReductionError(ValidationError):
    """Height reduction did not reach a base quadruple."""


class UnsupportedPackingError(ValidationError):
    """The packing is of a kind this library does not enumerate."""


class DivergenceError(ValidationError):
    """A series was requested at a point outside its domain of convergence."""

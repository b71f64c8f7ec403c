"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`ResidueError`.  The CLI maps each class to its own exit code.
"""

from __future__ import annotations


class ResidueError(Exception):
    """Base class for all package errors."""

    exit_code = 1


# exact arithmetic
class ArityError(ResidueError):
    """Parameter lists disagree, or an assignment misses a symbol."""

    exit_code = 10


class UndefinedGcd(ResidueError):
    exit_code = 11


class DivisionByZero(ResidueError, ZeroDivisionError):
    exit_code = 12


class EvalPoleError(ResidueError, ZeroDivisionError):
    """A denominator vanishes at the evaluation point."""

    exit_code = 13


class GrammarError(ResidueError, ValueError):
    """Coefficient string does not parse under the restricted grammar."""

    exit_code = 14

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        if text:
            message = f"{message} at column {pos + 1} in {text!r}"
        super().__init__(message)


class NotExactDivision(ResidueError, ArithmeticError):
    exit_code = 15


# lattice geometry
class EmptyHull(ResidueError, ValueError):
    exit_code = 20


class DimensionError(ResidueError, ValueError):
    exit_code = 21


# laurent algebra
class ZeroPolynomial(ResidueError, ValueError):
    exit_code = 30


class SupportError(ResidueError, ValueError):
    exit_code = 31


class TorusDomainError(ResidueError, ValueError):
    """Evaluation point has a zero coordinate."""

    exit_code = 32


class CoefficientDomainError(ResidueError, TypeError):
    """Coefficients of different kinds were mixed."""

    exit_code = 33


# residue engine
class Delta0Invalid(ResidueError, ValueError):
    exit_code = 40


class NonGenericSystem(ResidueError):
    """The linear system has no solution for this coefficient choice."""

    exit_code = 41


class DegenerateSystem(ResidueError):
    """The coordinate c is not determined by the linear system."""

    exit_code = 42


# delta0 optimizer
class ZeroDirection(ResidueError, ValueError):
    exit_code = 50


class Delta0SearchFailed(ResidueError):
    exit_code = 51


class LPError(ResidueError):
    """Exact simplex reported infeasibility or unboundedness."""

    exit_code = 52


# oracle / interpolation
class IncompleteRootSet(ResidueError):
    exit_code = 60


class MultipleRootSuspected(ResidueError):
    exit_code = 61


class NonGenericInput(ResidueError):
    exit_code = 62


class GenericityFailure(ResidueError):
    exit_code = 63


# cli
class SchemaError(ResidueError, ValueError):
    """Problem file violates the schema; ``path`` is a JSON pointer."""

    exit_code = 70

    def __init__(self, message: str, path: str = ""):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)

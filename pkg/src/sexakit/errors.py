"""Exception types shared across the package.

Grouped the way the CLI maps them to exit codes: input/grammar problems
(exit 2) versus violated mathematical preconditions (exit 3).
"""

from __future__ import annotations

from fractions import Fraction


def _plain(value) -> str:
    # Base-60 text when the value terminates, p/q otherwise.  The renderer
    # is called only through its non-raising fallback path: these messages
    # are built while a rendering failure is already being raised.
    if isinstance(value, Fraction):
        try:
            from .sexa import render
            return render(value, fraction_fallback=True)
        except Exception:
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
    return str(value)


class SexakitError(Exception):
    """Base class for every error raised by this package."""


# -- input / grammar ---------------------------------------------------------

class MalformedLiteral(SexakitError, ValueError):
    """Text does not match the sexagesimal literal grammar."""


class ExpressionError(SexakitError, ValueError):
    """Infix expression does not match the calculator grammar."""


class CorpusParseError(SexakitError):
    """A corpus file is structurally invalid."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class BadLiteral(CorpusParseError):
    """A corpus field holds a malformed sexagesimal literal."""


class UnknownProcedure(CorpusParseError):
    """A corpus problem names a procedure this engine does not implement."""


class UnknownProblem(SexakitError, KeyError):
    """A requested problem id is not in the loaded corpus."""


# -- mathematical preconditions ----------------------------------------------

class ZeroInput(SexakitError, ZeroDivisionError):
    """Zero where a nonzero value is required (reciprocal, regularity test)."""


class ZeroDivisor(SexakitError, ZeroDivisionError):
    """Division by zero."""


class NonTerminating(SexakitError):
    """Value has no finite base-60 expansion."""

    def __init__(self, value, prime: int):
        self.value = value
        self.prime = prime
        super().__init__(
            f"{_plain(value)} has no finite base-60 expansion "
            f"(denominator contains prime {prime})")


class IrregularDivisor(SexakitError):
    """Divisor is not regular, so it has no finite reciprocal."""

    def __init__(self, value, prime: int):
        self.value = value
        self.prime = prime
        super().__init__(
            f"{_plain(value)} is not a regular number (prime factor {prime}); "
            f"it has no finite reciprocal")


class NoFiniteQuotient(SexakitError):
    """An exact quotient exists but cannot be written in base 60."""


class NotAPerfectSquare(SexakitError):
    """Square root requested of a value that is not a rational square."""


class NegativeRadicand(SexakitError):
    """Square root requested of a negative value."""


class DimensionMismatch(SexakitError):
    """Quantities combined in a way the dimension algebra does not allow."""


class NonPositiveDimension(SexakitError):
    """A canal dimension that must be positive is zero or negative."""


class InconsistentConstraint(SexakitError):
    """Derived canal breadths violate the assumed ordering (upper >= lower)."""


class MalformedProblem(SexakitError):
    """Problem coefficients violate the procedure's invariants."""


class ProcedureError(SexakitError):
    """A replayed procedure failed; carries the stage where it broke."""

    def __init__(self, problem_id: str, stage: str, cause: Exception):
        self.problem_id = problem_id
        self.stage = stage
        self.cause = cause
        super().__init__(f"{problem_id}: {stage}: {cause}")

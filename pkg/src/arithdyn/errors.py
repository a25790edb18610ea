"""Exception hierarchy for the toolkit.

Every error raised on purpose derives from ArithDynError so CLI and library
callers can distinguish usage problems (bad input), resource problems
(budgets), and violated preconditions without string matching.
"""


class ArithDynError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ArithDynError):
    """Input outside the mathematical domain of an operation.

    Examples: valuation of zero, a projective point with both coordinates
    zero, S-unit test of zero.
    """


class UnsupportedPlaceError(ArithDynError):
    """Operation asked for at a place where it is undefined.

    The archimedean place of the rationals has no normalized integer
    valuation and no finite residue field.
    """


class UnsupportedConfigurationError(ArithDynError):
    """A configuration the toolkit deliberately does not handle.

    Example: S-unit generators over F_p(t) when the infinite place is not
    in S (the unit group is then a kernel lattice, out of scope).
    """


class BudgetExceededError(ArithDynError):
    """A factorization or enumeration budget was exhausted.

    Raised instead of ever returning a possibly-wrong answer.
    """


class PreconditionError(ArithDynError):
    """A documented operation precondition does not hold.

    Examples: reducing a map at a bad-reduction place, multiplier of a
    non-periodic point.
    """


class MapParseError(ArithDynError):
    """Syntax or semantic error while parsing an expression.

    Carries the character position when known.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegenerateMapError(ArithDynError):
    """The two forms of a would-be rational map share a projective root."""

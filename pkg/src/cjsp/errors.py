"""Exception hierarchy shared across the package."""


class CjspError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CjspError):
    """Base class for instance-file parse failures; carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(ParseError):
    """Header is not two positive integers."""


class WrongTokenCount(ParseError):
    """A job line does not hold the expected number of integer tokens."""


class MachineOutOfRange(ParseError):
    """An operation references a machine index >= the machine count."""


class NegativeDuration(ParseError):
    """An operation has a negative processing time."""


class BadOpCount(ParseError):
    """Variable-length job line with a non-positive or inconsistent op count."""


class OrderZero(CjspError):
    """Cyclic order k must be at least 1."""


class PermutationMismatch(CjspError):
    """Permutation occurrence counts do not match the instance's operations."""


class EmptySchedule(CjspError):
    """A schedule with no entries cannot be rendered."""


class InvalidConfig(CjspError):
    """Annealing configuration violates a parameter bound."""


class NonPositiveDenominator(CjspError):
    """Acceptance probability needs current value, temperature and kt > 0."""


class ZeroBaseline(CjspError):
    """Relative difference is undefined for a zero baseline."""


class EmptyReport(CjspError):
    """Summary statistics need at least one benchmark row."""

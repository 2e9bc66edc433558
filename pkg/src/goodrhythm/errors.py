"""Exception types shared across the package."""


class RhythmError(Exception):
    """Base class for all errors raised by goodrhythm."""


class UsageError(RhythmError, ValueError):
    """Bad arguments: modulus mismatch, unsupported size, failed precondition."""


class ParseError(UsageError):
    """A rhythm or vector could not be parsed from text."""


class InvariantViolation(RhythmError):
    """A structural invariant failed. For valid input this indicates a bug."""


class CapExceeded(InvariantViolation):
    """An orbit did not reach width <= 1 within the iteration cap."""

"""Exception types shared across the package."""


class SeqStateError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(SeqStateError):
    """A request exceeded a configured size or memory cap."""


class NumericError(SeqStateError):
    """A numeric invariant (normalization, hermiticity, ...) failed tolerance."""


class BFileFormatError(SeqStateError, ValueError):
    """A b-file stream is malformed; message carries the 1-based line number."""

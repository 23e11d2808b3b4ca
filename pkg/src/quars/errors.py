"""Exception taxonomy shared by all quars modules."""


class QuarsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(QuarsError):
    """Caller-supplied data violates an API precondition (empty dataset, q < 1, ...)."""


class Overflow(QuarsError):
    """An operation would produce a value outside signed 64-bit range."""


class ValueTooLarge(QuarsError):
    """A value exceeds a codec's encodable range (e.g. the Rice quotient guard)."""


class CorruptData(QuarsError):
    """A serialized stream violates a structural invariant and cannot be decoded."""


class MagicMismatch(QuarsError):
    """A container's leading magic bytes do not identify a quars file."""


class UnsupportedVersion(QuarsError):
    """A container declares a format version this reader does not support."""

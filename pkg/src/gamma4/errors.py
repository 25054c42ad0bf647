"""Exception hierarchy for gamma4."""

from __future__ import annotations


class Gamma4Error(Exception):
    """Base class for all errors raised by gamma4."""


class DuplicateLabel(Gamma4Error, ValueError):
    pass


class OutOfRange(Gamma4Error, ValueError):
    pass


class NTooSmall(Gamma4Error, ValueError):
    pass


class NTooSmallForClaim(Gamma4Error, ValueError):
    """A claim's hypothesis on n is not met."""


class WordSyntaxError(Gamma4Error, ValueError):
    pass


class DimensionMismatch(Gamma4Error, ValueError):
    pass


class Frozen(Gamma4Error, RuntimeError):
    pass


class MemoryBudgetExceeded(Gamma4Error, RuntimeError):
    pass


class BadSubset(Gamma4Error, ValueError):
    pass


class FormatError(Gamma4Error, ValueError):
    """A model file is malformed or internally inconsistent."""


class ChecksumMismatch(FormatError):
    pass

"""Exception types raised across the package."""


class RankedTreeError(ValueError):
    """Base class for all errors raised by :mod:`rankedtrees`."""

    reason = "error"


class SizeOutOfRangeError(RankedTreeError):
    reason = "size-out-of-range"


class MalformedMergeSequenceError(RankedTreeError):
    reason = "malformed-merge-sequence"


class NullEventError(RankedTreeError):
    """Conditioning on an event of probability zero."""

    reason = "null-event"


class DomainError(RankedTreeError):
    """Closed-form evaluation requested too close to a pole or branch point."""

    reason = "domain-error"


class BudgetExceededError(RankedTreeError):
    reason = "budget-exceeded"


class InvalidTreeError(RankedTreeError):
    reason = "invalid-tree"

"""Exception types shared across the package."""


class WittlamError(Exception):
    """Base class for all library errors."""


class RingMismatchError(WittlamError):
    """Operands belong to different rings or truncations."""


class MembershipError(WittlamError):
    """A value does not belong to the ring it was constructed in."""


class UnsupportedRingError(WittlamError):
    """The requested operation is not defined for this ring kind."""


class UnsupportedIdealError(WittlamError):
    """The ideal descriptor is not supported by this coefficient domain."""


class ExactDivisionError(WittlamError):
    """Exact division is impossible inside the ring."""


class IntegralityError(WittlamError):
    """A quantity that must be integral came out non-integral (engine bug)."""


class WilkersonError(WittlamError):
    """The Adams data do not lift: a Newton division failed in the ring."""


class SymmetryError(WittlamError):
    """Input polynomial is not symmetric in the designated variables."""


class BoundExceededError(WittlamError):
    """A requested universal polynomial lies outside the configured bound."""


class PrimeWindowError(WittlamError):
    """An operation needs a prime outside the structure's prime window."""


class RelationViolationError(WittlamError):
    """An assignment fails the defining relations of the universal ring."""


class LubinHypothesisError(WittlamError):
    """The commuting-series hypotheses (on the linear coefficient) fail."""

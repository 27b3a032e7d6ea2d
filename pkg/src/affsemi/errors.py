"""Exception hierarchy shared by every module."""


class AffsemiError(Exception):
    pass


class DimensionMismatch(AffsemiError, ValueError):
    pass


class PreconditionError(AffsemiError, ValueError):
    """An operation was called outside its documented domain."""


class ContainmentError(PreconditionError):
    pass


class NonIntegralImage(PreconditionError):
    pass


class BoundRequired(PreconditionError):
    pass


class NotStabilized(AffsemiError):
    """A bounded enumeration failed its completeness certificate."""


class Cancelled(AffsemiError):
    pass


class ParseError(AffsemiError, ValueError):
    pass


class Inconclusive(PreconditionError):
    """A bounded search could not settle a question it was required to settle."""

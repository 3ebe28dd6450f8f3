"""Exception types shared across the package."""


class PartfracError(Exception):
    """Base class for all errors raised by this package."""


class RingError(PartfracError):
    """Operation mixed polynomials from incompatible rings."""


class DivisionError(PartfracError):
    """Exact polynomial division failed (operand not divisible)."""


class ParseError(PartfracError):
    """Syntax error in an input expression.

    Carries the 0-based character position so callers can point at the
    offending spot.
    """

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)


class UnknownFactorError(PartfracError):
    """A denominator factor is not covered by the declared factor set."""


class NotFittedError(PartfracError, ValueError, AttributeError):
    """Estimator used before fit.

    Also a ValueError and AttributeError so handlers written for the
    usual estimator frameworks catch it unchanged.
    """


class AnchorError(PartfracError):
    """No anchor point satisfying the distinct-prime conditions was found."""


class ReconstructionError(PartfracError):
    """Sampling or interpolation could not complete."""

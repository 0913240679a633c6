"""Exception hierarchy shared by all wcompose modules."""


class WcomposeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(WcomposeError, ValueError):
    """Malformed expression text.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PositivityError(WcomposeError, ValueError):
    """A ``sqrt`` argument is not certified strictly positive on the reals."""


class GrammarClosureError(WcomposeError):
    """An operation would produce an expression outside the supported grammar."""


class DimensionMismatch(WcomposeError, ValueError):
    pass


class InvalidRange(WcomposeError, ValueError):
    pass


class CapExceeded(WcomposeError):
    """A configured size cap (degree, node count, derivative order) was hit."""


class ZeroPolynomial(WcomposeError, ValueError):
    pass


class PreconditionViolated(WcomposeError):
    pass


class NotApplicable(WcomposeError):
    pass


class InternalInconsistency(WcomposeError):
    """A classification report violates the implication lattice (a rule bug)."""

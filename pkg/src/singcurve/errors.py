"""Exception hierarchy shared by all modules."""


class SingCurveError(Exception):
    """Base class for every error raised by the package."""


class ArityError(SingCurveError, ValueError):
    pass


class DegenerateFactorError(SingCurveError, ValueError):
    pass


class NotDivisibleError(SingCurveError, ArithmeticError):
    pass


class InvalidCharExponents(SingCurveError, ValueError):
    pass


class NotCofinite(SingCurveError, ValueError):
    pass


class MalformedGraph(SingCurveError, ValueError):
    """The dual graph is not a valid plane-curve resolution graph.

    ``row`` carries the offending vertex / linear-system row when known.
    """

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class NonPolynomialError(SingCurveError, ArithmeticError):
    pass


class SynthesisError(SingCurveError, RuntimeError):
    pass


class PrecisionError(SingCurveError, ArithmeticError):
    """Truncation order or jet degree too small for the requested query."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}


class MarginError(SingCurveError, ValueError):
    pass


class FixtureError(SingCurveError, ValueError):
    pass

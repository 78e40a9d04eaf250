"""Exception hierarchy shared by all zetalab modules."""


class ZetalabError(Exception):
    """Base class for every error raised by zetalab."""


# -- field construction and arithmetic ---------------------------------------

class CompositeModulus(ZetalabError, ValueError):
    pass


class SizeExceeded(ZetalabError):
    """An enumeration or field size is over the configured policy bound."""


class DivisionByZero(ZetalabError, ZeroDivisionError):
    pass


class EvenPrime(ZetalabError, ValueError):
    pass


# -- varieties ---------------------------------------------------------------

class NotHomogeneous(ZetalabError, ValueError):
    pass


class NotSquarefree(ZetalabError, ValueError):
    pass


class InconsistentCounts(ZetalabError):
    """Closed-point counts derived from a series are negative or fractional."""


# -- zeta --------------------------------------------------------------------

class NonIntegralCoefficient(ZetalabError):
    pass


class InsufficientTerms(ZetalabError, ValueError):
    pass


class ReconstructionFailed(ZetalabError):
    pass


class NoFunctionalEquation(ZetalabError):
    pass


class DegreeExceeded(ZetalabError, ValueError):
    pass


class DegreeViolation(ZetalabError):
    pass


# -- character sums ------------------------------------------------------------

class ZeroCoefficient(ZetalabError, ValueError):
    pass


class SmoothnessUnverified(ZetalabError):
    """The smoothness screen found a singular point; the bound does not apply."""


# -- classical / modular forms ---------------------------------------------------

class NotOneModFour(ZetalabError, ValueError):
    pass


class HypothesisNotMet(ZetalabError, ValueError):
    pass


class NotCoprime(ZetalabError, ValueError):
    pass


class OutOfRange(ZetalabError, ValueError):
    pass


class BoundViolated(ZetalabError):
    pass


# -- parsing -----------------------------------------------------------------

class PolySyntaxError(ZetalabError, ValueError):
    """Malformed polynomial text; carries 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class MixedVariables(ZetalabError, ValueError):
    pass

"""Exception hierarchy shared across the package."""


class PadicDynError(Exception):
    """Base class for all padicdyn errors."""


class NotPrime(PadicDynError):
    """The given modulus is not a prime number."""


class NotIrreducible(PadicDynError):
    """A user-supplied defining polynomial is reducible mod p."""


class NotEisenstein(PadicDynError):
    """A user-supplied ramified defining polynomial fails the Eisenstein criterion."""


class FieldMismatch(PadicDynError):
    """Operands belong to different p-adic fields."""


class NotInvertibleAtPrecision(PadicDynError):
    """The element is indistinguishable from zero at its precision, so no inverse exists."""


class NotIntegral(PadicDynError):
    """A value required to be integral has negative valuation."""


class HenselConditionFailed(PadicDynError):
    """v(g(x0)) > 2*v(g'(x0)) does not hold, so Newton lifting is not certified."""


class PrecisionExhausted(PadicDynError):
    """A result was requested beyond the working precision of the field."""


class PrecisionTooLowToDecide(PadicDynError):
    """Squareness near the p=2 boundary cannot be decided at the available precision."""


class StarConditionFailed(PadicDynError):
    """The polynomial does not satisfy the reduction condition required here."""


class DegreeNotDivisibleByP(StarConditionFailed):
    """The degree is not divisible by the residue characteristic."""


class DegreeNotPrimePower(PadicDynError):
    """The degree is not a power of the residue characteristic."""


class InexactDivision(PadicDynError):
    """An exact polynomial division left a remainder; this signals an internal bug."""


class BudgetExceeded(PadicDynError):
    """An exhaustive enumeration would exceed the configured budget."""


class HypothesisFailed(PadicDynError):
    """The hypotheses needed for an exactness statement do not hold for this input."""


class NotIntegralAt2(PadicDynError):
    """c is not integral at the chosen prime above 2."""

    def __init__(self, message, valuation=None):
        super().__init__(message)
        self.valuation = valuation


class DepthCapReached(PadicDynError):
    """Preimage search hit its depth cap before closing."""


class ParseError(PadicDynError, ValueError):
    """Malformed polynomial or element text."""

"""Exception hierarchy.

Every predicate failure that has an independently checkable witness
(a factor of a reducible modulus, an element breaking scatteredness, ...)
carries it on the exception, so callers never have to re-derive why an
operation was refused.
"""


class LinsetsError(Exception):
    """Base class; `detail` is a JSON-able payload for the CLI."""

    def __init__(self, message, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_json(self):
        return {"error": type(self).__name__, "message": self.message,
                **self.detail}


class NonPrime(LinsetsError):
    pass


class ReducibleModulus(LinsetsError):
    """Carries `modulus` and a `factor` witness found by trial division."""


class DeskScaleExceeded(LinsetsError):
    pass


class DivisionByZero(LinsetsError):
    pass


class NotADivisor(LinsetsError):
    pass


class TowerMismatch(LinsetsError):
    pass


class SigmaNotGenerator(LinsetsError):
    pass


class ZeroPolynomial(LinsetsError):
    pass


class AmbientMismatch(LinsetsError):
    pass


class ZeroSubspace(LinsetsError):
    pass


class NotABasis(LinsetsError):
    pass


class SingularMoore(LinsetsError):
    pass


class NotPrimitivePolynomialBasis(LinsetsError):
    pass


class MinPolyMismatch(LinsetsError):
    pass


class NotDirectSum(LinsetsError):
    pass


class RankOverflow(LinsetsError):
    pass


class NotScattered(LinsetsError):
    """Carries the witness slope `m` whose kernel is too large."""


class BadXi(LinsetsError):
    pass


class NormConditionFailed(LinsetsError):
    """Names which norm condition failed in `condition`."""


class NoParameterFound(LinsetsError):
    pass


class PreconditionUniqueWeightFailed(LinsetsError):
    pass


class BudgetExceeded(LinsetsError):
    """Carries the exact `required` work estimate."""


class ReduciblePolynomial(LinsetsError):
    pass


class SingularInput(LinsetsError):
    pass


class TTooSmall(LinsetsError):
    pass


class UnknownSuite(LinsetsError):
    pass


class CertificateMismatch(LinsetsError):
    """A self-verifying construction disagreed with its predicted outcome."""

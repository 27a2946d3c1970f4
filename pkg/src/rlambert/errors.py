"""Exception types shared across the package."""


class NonExactDivision(ArithmeticError):
    """Polynomial division left a nonzero remainder where none was allowed."""


class ValuationError(ValueError):
    """A series does not have the valuation required by the operation."""


class TruncationError(ValueError):
    """A coefficient beyond the tracked truncation order was requested."""


class NotInvertible(ArithmeticError):
    """Element of the root quotient ring has identically vanishing norm."""


class BudgetExceeded(RuntimeError):
    """Monodromy enumeration would exceed the configured search budget."""


class CorruptCache(ValueError):
    """Hurwitz cache file failed to parse; nothing was loaded."""


class FitResidualNonzero(ArithmeticError):
    """A held-out series coefficient disagrees with the fitted free energy."""


class IdentityFailure(AssertionError):
    """An identity that must hold exactly failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAFunctionOfZr(ValueError):
    """Input is not invariant under z -> zeta_r z."""


class NotPolynomialInT(ValueError):
    """Rewrite in t = 1/(1-rz^r) produced negative powers of t."""


class TruncationTooShallow(ValueError):
    """Chart truncation cannot certify the requested pole window."""


class GaloisAsymmetry(AssertionError):
    """Root-ring residue retained nontrivial a-powers after reduction."""


class MismatchWithLaplace(AssertionError):
    """Eynard-Orantin output disagrees with the Laplace-transform route."""


class InsufficientTable(KeyError):
    """Partition-function assembly is missing required Hurwitz values."""

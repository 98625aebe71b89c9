"""Exception types shared across the library."""


class EvolflowError(Exception):
    """Base class for every error raised by evolflow."""


class NonFiniteInput(EvolflowError, ValueError):
    """A matrix or vector contains NaN or infinite entries."""


class DimensionMismatch(EvolflowError, ValueError):
    """Operands are not square or their dimensions disagree."""


class SingularMatrix(EvolflowError, ValueError):
    """A matrix required to be invertible is singular (or numerically so)."""


class HorizonExceeded(EvolflowError, ValueError):
    """A numerically integrated curve was evaluated outside its horizon."""


class WrongVariant(EvolflowError, TypeError):
    """An operation was applied to a curve variant it is not defined for."""


class NotStochastic(EvolflowError, ValueError):
    """The matrix is not a member of the stochastic group S(n, R)."""


class NotInGroup(EvolflowError, ValueError):
    """A flow was applied to a base point outside its declared group."""


class NotInAlgebra(EvolflowError, ValueError):
    """A flow generator is not in the Lie algebra of the declared group."""


class RateMatrixError(EvolflowError, ValueError):
    """Base class for Markov generator validation failures."""

    def __init__(self, message, defects=None):
        super().__init__(message)
        self.defects = list(defects) if defects is not None else []


class NegativeOffDiagonal(RateMatrixError):
    """An off-diagonal entry of a would-be rate matrix is negative."""


class RowSumNonzero(RateMatrixError):
    """A row of a would-be rate matrix does not sum to zero."""


class SubsetTooSmall(EvolflowError, ValueError):
    """A truncation was requested onto fewer than two states."""


class CommutatorTooLarge(EvolflowError, ValueError):
    """The generator does not commute with its integral; the closed-form
    exponential solution does not apply."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class NonFiniteGenerator(EvolflowError, ValueError):
    """A time-dependent generator returned non-finite entries."""


class BadGrid(EvolflowError, ValueError):
    """A grid specification string could not be parsed."""

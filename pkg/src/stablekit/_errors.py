"""Exception types shared across the package."""


class StableKitError(Exception):
    """Base class for all stablekit errors."""


class DomainError(StableKitError, ValueError):
    """A parameter lies outside its admissible interval."""


class DimensionMismatch(StableKitError, ValueError):
    """Array arguments have incompatible shapes."""


class NumericalFailure(StableKitError, ArithmeticError):
    """A numerical routine failed to converge to the requested tolerance."""


class UnsupportedAlpha(StableKitError, ValueError):
    """The requested operation is undefined at this alpha (series at alpha=1)."""


class EmptyTruncationRegion(StableKitError, ValueError):
    """Truncation bounds carry no probability mass."""


class NotPositiveDefinite(StableKitError, ValueError):
    """A dispersion matrix is not symmetric positive definite."""


class RankDeficientData(StableKitError, ValueError):
    """The data matrix does not have full column rank."""


class ComponentCollapse(StableKitError, ArithmeticError):
    """A mixture component lost essentially all posterior mass."""


class MaxIterations(StableKitError, ArithmeticError):
    """An iterative fit hit its iteration cap before converging."""


class DegenerateEcf(StableKitError, ArithmeticError):
    """The empirical chf is indistinguishable from 1 on the whole grid."""


class IllConditioned(StableKitError, ArithmeticError):
    """A linear system is too ill-conditioned to solve reliably."""


class ParseError(StableKitError, ValueError):
    """Malformed tabular input (bad number, NaN/Inf, ragged row)."""

    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col

"""Exception types raised across the package."""


class NLSAError(Exception):
    """Base class for every error raised by nlsa."""


class DivisionByZero(NLSAError, ZeroDivisionError):
    pass


class FieldMismatch(NLSAError):
    pass


class AmbientMismatch(NLSAError):
    """Two subspaces or operators do not live on the same graded space."""


class ParityError(NLSAError):
    """An operation needs homogeneous input (or an even operator) and got something else."""


class ArityMismatch(NLSAError):
    pass


class BadArity(NLSAError):
    pass


class NotAnIdeal(NLSAError):
    pass


class HypothesisNotMet(NLSAError):
    pass


class BudgetExceeded(NLSAError):
    pass


class FiniteFieldRequired(NLSAError):
    pass


class InvalidRepresentation(NLSAError):
    pass


class BadDecomposition(NLSAError):
    pass


class NotHMC(NLSAError):
    """Subspace is not closed under the bracket."""


class ParityObstruction(NLSAError):
    pass


class IncompatibleAlgebras(NLSAError):
    pass


class FormatError(NLSAError):
    """Malformed algebra file."""

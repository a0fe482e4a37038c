"""Exception hierarchy for operator computations."""

from typing import Optional


class OperatorError(Exception):
    """Base class for every failure raised by the operators package."""


class ShapeMismatchError(OperatorError, ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


class SvdConvergenceError(OperatorError):
    """The Jacobi sweeps did not converge within the iteration budget."""

    def __init__(self, message: str, residual: float, sweeps: Optional[int] = None):
        super().__init__(f"{message} (residual={residual:.3e}, sweeps={sweeps})")
        self.residual = residual
        self.sweeps = sweeps


class PreconditionError(OperatorError, ValueError):
    """A stated precondition is not met; the result is a skip, not a verdict."""


class SingularOperatorError(OperatorError):
    """An operator that must be invertible is numerically singular."""


class OutsideNeighborhoodError(OperatorError):
    """A local cross section was evaluated outside its admissible neighborhood."""


class ConstructionInapplicableError(PreconditionError):
    """The constructive generalized inverse cannot be built for this pair."""


class MatrixFormatError(OperatorError, ValueError):
    """A matrix payload does not follow the JSON matrix format."""

"""
Exception hierarchy shared by every package.
"""
from typing import Optional


class PovmForgeError(Exception):
    """Base class; `invariant` names the violated contract for CLI reports."""

    invariant = "unspecified"

    def __init__(self, message: str, *, invariant: Optional[str] = None, residual: Optional[float] = None):
        super().__init__(message)
        if invariant is not None:
            self.invariant = invariant
        self.residual = residual

    def to_dict(self) -> dict:
        report = {"error": str(self), "kind": type(self).__name__, "invariant": self.invariant}
        if self.residual is not None:
            report["residual"] = self.residual
        return report


class NonFiniteMatrix(PovmForgeError):
    invariant = "finite entries"


class NotHermitian(PovmForgeError):
    invariant = "hermiticity"


class NotPsd(PovmForgeError):
    invariant = "positive semidefiniteness"


class NotProjector(PovmForgeError):
    invariant = "rank-1 projector"


class InvalidConfig(PovmForgeError):
    invariant = "valid configuration"


class OutOfRange(PovmForgeError):
    invariant = "parameter range"


class NoSolution(PovmForgeError):
    invariant = "inverse round trip"


class IncompleteSet(PovmForgeError):
    invariant = "completeness"


class SingularStage(PovmForgeError):
    invariant = "chain stage feasibility"


class InvariantViolation(PovmForgeError):
    pass


class UsageError(PovmForgeError):
    invariant = "command usage"

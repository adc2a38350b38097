"""Exception and warning hierarchy shared by every xychain module.

Each exception class carries the process exit code the command line
front end returns when it escapes a subcommand.
"""
from __future__ import annotations


class XYChainError(Exception):
    """Base class for all xychain failures."""

    exit_code: int = 1


# -----------------------------------------------------------------------------
# Validation (exit code 2)
# -----------------------------------------------------------------------------

class ValidationError(XYChainError, ValueError):
    """An argument lies outside the admissible domain."""

    exit_code = 2


class InvalidSizeError(ValidationError):
    """Chain length below the minimum of two sites."""


class DegenerateLineError(ValidationError):
    """The disorder line was requested at the XX point r = 0."""


# -----------------------------------------------------------------------------
# Accuracy (exit code 3)
# -----------------------------------------------------------------------------

class AccuracyError(XYChainError):
    """A numerical procedure could not reach its target accuracy."""

    exit_code = 3


class QuadratureAccuracyError(AccuracyError):
    """Adaptive quadrature stopped refining before converging."""

    def __init__(self, message: str, achieved_error: float):
        super().__init__(message, achieved_error)
        self.message = message
        self.achieved_error = achieved_error

    def __str__(self) -> str:
        return f"{self.message} (achieved error {self.achieved_error:.3e})"


class NearCriticalError(QuadratureAccuracyError):
    """Field derivative requested too close to the critical field h = 1."""

    def __init__(self, h: float, threshold: float):
        super().__init__(f"|h - 1| = {abs(h - 1.0):.3e} is below {threshold:.0e}",
                         achieved_error=float("inf"))
        # unpickling calls the class with args
        self.args = (h, threshold)
        self.h = h
        self.threshold = threshold


class DegenerateOverlapError(AccuracyError):
    """The overlap vanished at every sampled ansatz angle."""


class BracketError(AccuracyError):
    """A coarse scan did not isolate a single maximum."""


class AsymmetryError(AccuracyError):
    """The two sides of the critical point gave different amplitudes."""


class FitError(AccuracyError):
    """A least-squares fit was rank deficient or under-determined."""


class BranchError(AccuracyError):
    """A logarithm argument left the positive branch."""


# -----------------------------------------------------------------------------
# Size limits (exit code 4)
# -----------------------------------------------------------------------------

class SizeLimitError(XYChainError):
    """Chain length beyond what an exhaustive method can handle."""

    exit_code = 4


# -----------------------------------------------------------------------------
# Warnings
# -----------------------------------------------------------------------------

class XYChainWarning(UserWarning):
    """Base class for flagged-but-recoverable conditions."""


class DegenerateAngleWarning(XYChainWarning):
    """Bogoliubov angle evaluated at atan2(0, 0)."""


class OutsideDomainWarning(XYChainWarning):
    """Closed form evaluated outside its domain; an exact limit was returned."""


__all__ = [
    "XYChainError",
    "ValidationError",
    "InvalidSizeError",
    "DegenerateLineError",
    "AccuracyError",
    "QuadratureAccuracyError",
    "NearCriticalError",
    "DegenerateOverlapError",
    "BracketError",
    "AsymmetryError",
    "FitError",
    "BranchError",
    "SizeLimitError",
    "XYChainWarning",
    "DegenerateAngleWarning",
    "OutsideDomainWarning",
]

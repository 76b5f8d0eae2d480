"""Exception types raised across the package."""


class KuramotoDaidoError(Exception):
    """Base class for all package errors."""


class StripViolation(KuramotoDaidoError, ValueError):
    """A complex argument lies outside the analyticity strip of a density."""


class QuadratureFailure(KuramotoDaidoError, ArithmeticError):
    """An integral did not converge to the requested tolerance."""


class InvalidHarmonic(KuramotoDaidoError, ValueError):
    """The requested harmonic has a vanishing Fourier coefficient."""


class NoConvergence(KuramotoDaidoError, ArithmeticError):
    """An iterative solver failed to reach its residual target."""


class AmbiguousMaximizer(KuramotoDaidoError):
    """Two transition roots tie for the largest density value."""


class NoRoots(KuramotoDaidoError):
    """The transition equation has no root in the search interval."""


class AtSingularity(KuramotoDaidoError, ZeroDivisionError):
    """The resolvent is evaluated at (or too near) a generalized eigenvalue."""


class DegenerateEigenvalue(KuramotoDaidoError, ArithmeticError):
    """The characteristic function has a vanishing derivative at the root."""


class AssumptionViolation(KuramotoDaidoError):
    """One of the standing assumptions A1-A4 fails for the given parameters."""

    def __init__(self, assumption, message):
        super().__init__(f"{assumption}: {message}")
        self.assumption = assumption


class NoBranch(KuramotoDaidoError):
    """No bifurcating branch exists at the requested coupling."""


class ClosureOverflow(KuramotoDaidoError, FloatingPointError):
    """The Galerkin mode cutoff is too small for the requested dynamics."""


class WindowTooShort(KuramotoDaidoError, ValueError):
    """A measurement window contains too few samples."""

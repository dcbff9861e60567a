"""Exception types shared across the package."""


class BlowupLabError(Exception):
    """Base class for package errors."""


class NonFiniteEvaluation(BlowupLabError):
    """A function returned nan/inf inside its declared domain."""


class DegenerateInterval(BlowupLabError):
    """Interval too short for a mean value to be well defined."""


class InvalidWindow(BlowupLabError):
    """Test window does not lie strictly inside the function's domain."""


class InvalidH(BlowupLabError):
    """Weight h violates the premise h(lam) + h(1-lam) >= 1."""


class NonPositiveValue(BlowupLabError):
    """Positive value required (e.g. before taking a logarithm)."""


class NonPositivePrimitive(BlowupLabError):
    """Primitive F(t) <= 0 where the test requires F > 0."""


class UnknownCatalogId(BlowupLabError):
    """Catalog id does not resolve to a registered nonlinearity."""


class InvalidGrid(BlowupLabError):
    """Grid parameters out of range (need b > a and n >= 8)."""


class EvaluationFailure(BlowupLabError):
    """Profile or reaction evaluation produced non-finite values."""


class StallDetected(BlowupLabError):
    """Time step fell below dt_min before a step could be accepted."""

    def __init__(self, dt, message=""):
        self.dt = dt
        super().__init__(message or f"dt={dt:g} below dt_min")


class EmptyTrace(BlowupLabError):
    """Diagnostic called on an empty trace."""


class InsufficientTrace(BlowupLabError):
    """Trace too short for finite-difference diagnostics."""


class PreconditionNotMet(BlowupLabError):
    """A check's stated hypothesis fails on the given data."""


class ConfigError(BlowupLabError):
    """Run configuration missing, malformed, or containing unknown keys."""

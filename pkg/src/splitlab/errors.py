"""Exception taxonomy shared by all modules."""


class SplitLabError(Exception):
    """Base class for all package errors."""


class DomainError(SplitLabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PrecisionError(SplitLabError):
    """The requested precision mode cannot resolve the target quantity.

    Carries the smallest adequate mode (if any) in ``required_mode``.
    """

    def __init__(self, message, required_mode=None):
        super().__init__(message)
        self.required_mode = required_mode


class BlowUpError(SplitLabError):
    """A trajectory component exceeded the blow-up threshold."""

    def __init__(self, message, component=None, t=None):
        super().__init__(message)
        self.component = component
        self.t = t


class NoCrossingError(SplitLabError):
    """Section-crossing search exhausted max_steps without an event."""


class SeedTooCloseError(SplitLabError):
    """Manifold seed point violates the geometric-decay precondition."""

    def __init__(self, message, suggested_x0=None):
        super().__init__(message)
        self.suggested_x0 = suggested_x0


class BracketError(SplitLabError):
    """Root bracket does not straddle a sign change."""


class ConvergenceError(SplitLabError):
    """An iterative refinement stalled before reaching its tolerance."""


class FitError(SplitLabError):
    """Amplitude fit refused (too few usable records or degenerate data)."""

"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition.

    ``field`` names the offending argument so callers (the CLI in
    particular) can report it.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class UnsupportedOrderError(ValidationError):
    """Oscillator eigenfunction requested above the supported order."""


class TimeRangeError(ValidationError):
    """Requested time lies outside a sampled generator's table."""


class NumericalFailure(RuntimeError):
    """An iterative numerical routine did not reach its tolerance."""

    def __init__(self, message, worst_residual=float("nan")):
        self.worst_residual = worst_residual
        super().__init__(f"{message} (worst residual {worst_residual:.3e})")

"""Error taxonomy for discext.

Every exception carries a ``module`` attribute naming the subsystem that
raised it, so front ends can report the origin of a failure.
"""


class DiscExtError(Exception):
    """Base class for all discext errors."""

    def __init__(self, message, module="discext"):
        super().__init__(message)
        self.module = module


class ValidationError(DiscExtError):
    """Invalid input data or a violated structural invariant."""


class PoleError(DiscExtError):
    """A query hit a pole (spectral point) of the object being evaluated.

    Poles are meaningful spectral data here, not numerical accidents, so
    they are reported distinctly instead of returning huge numbers.
    """


class TruncationError(DiscExtError):
    """A series truncation cannot deliver the requested tolerance."""


class ConvergenceError(DiscExtError):
    """An iterative or discrete computation failed to converge."""


class ConfigError(DiscExtError):
    """Malformed or inconsistent job configuration."""

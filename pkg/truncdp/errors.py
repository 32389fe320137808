"""
Exceptions raised by truncdp.
The CLI maps them onto its exit codes (see run.py).
"""


class TruncDPError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(TruncDPError, ValueError):
    """Invalid input: bad interval, NaN, non-positive parameter, ..."""


class EmptyFeasibleSpaceError(ValidationError):
    """The merged constraints cover the whole real line."""


class NegativeDistanceError(ValidationError):
    """A distance to a constraint boundary was negative."""


class UnsupportedConfigClassError(ValidationError):
    """The operation does not serve this class of configuration."""


class ConfigFileError(ValidationError):
    """A JSON configuration file could not be read or is ill-formed."""


class InfeasibleLocationError(TruncDPError, ValueError):
    """A location or true response lies strictly inside a constraint."""

    def __init__(self, location, interval=None):
        self.location = location
        self.interval = interval
        if interval is None:
            message = f'location {location!r} is not feasible'
        else:
            message = f'location {location!r} lies inside constraint {interval}'
        super().__init__(message)


class LambertDomainError(TruncDPError, ValueError):
    """LambertW input outside the domain of the requested branch."""


class DegenerateMassError(TruncDPError, ArithmeticError):
    """Numerically all of the Laplace mass was removed by the constraints."""


class ConvergenceError(TruncDPError, RuntimeError):
    """An internal numerical procedure did not behave as proven."""

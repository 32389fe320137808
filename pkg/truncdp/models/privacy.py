"""
Privacy budget of the data custodian and sensitivity of the query.
"""
import math
from dataclasses import dataclass

from truncdp.errors import ValidationError


@dataclass(frozen=True)
class PrivacyParams:
    """epsilon (unitless) and delta_f (query-response units), both > 0."""

    epsilon: float
    delta_f: float

    def __post_init__(self):
        for name in ('epsilon', 'delta_f'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f'{name} must be a real number, got {value!r}')
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(f'{name} must be a finite positive number, got {value!r}')
            object.__setattr__(self, name, float(value))

    @property
    def laplace_scale(self):
        """Scale of the plain Laplace mechanism, delta_f / epsilon."""
        return self.delta_f / self.epsilon

    @property
    def max_uniform_sigma(self):
        """Upper end of the uniform sigma search, 2 * delta_f / epsilon."""
        return 2.0 * self.delta_f / self.epsilon

    def distance_index(self, distance):
        """Number of spans of delta_f covered by a distance."""
        return distance / self.delta_f

    def bound(self, i):
        """Multiplicative bound e^(i * epsilon) for locations i spans of delta_f apart."""
        return math.exp(i * self.epsilon)

    def __repr__(self):
        return f'<PrivacyParams epsilon={self.epsilon} delta_f={self.delta_f}>'

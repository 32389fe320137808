"""
Scale plans: which sigma the mechanism uses for a given true response.

Every plan answers sigma_for(mu); the verifier and the mechanism builder do
not need to know which class of configuration produced it.
"""
import math
from dataclasses import dataclass
from enum import Enum

from truncdp.errors import InfeasibleLocationError, UnsupportedConfigClassError, ValidationError
from truncdp.models.constraint import ConfigClass, classify
from truncdp.models.privacy import PrivacyParams

# Relative slack when comparing sigma to its 2 * delta_f / epsilon ceiling
SIGMA_CEILING_SLACK = 1e-12

CONDITION_KINDS = ('regular', 'symmetric', 'endpoint-pair')


class Direction(Enum):
    CONSTRAINT_ON_RIGHT = 'constraint-on-right'
    CONSTRAINT_ON_LEFT = 'constraint-on-left'

    def __repr__(self):
        return f'<Direction {self.value}>'


@dataclass(frozen=True)
class SingleInfinitePlan:
    """
    Distance-dependent scale for a configuration with one infinite constraint.

    boundary is the finite endpoint of that constraint; sigma0 the scale for
    a true response sitting on it.
    """

    params: PrivacyParams
    boundary: float
    direction: Direction
    sigma0: float

    config_class = ConfigClass.SINGLE_INFINITE

    @classmethod
    def from_config(cls, config, params):
        from truncdp.services.sigma_single_infinite import sigma_at_boundary

        if classify(config) is not ConfigClass.SINGLE_INFINITE:
            raise UnsupportedConfigClassError(
                f'{config!r} is not a single-infinite configuration'
            )
        constraint = config.intervals[0]
        if constraint.right == math.inf:
            boundary, direction = constraint.left, Direction.CONSTRAINT_ON_RIGHT
        else:
            boundary, direction = constraint.right, Direction.CONSTRAINT_ON_LEFT
        return cls(params=params, boundary=boundary, direction=direction,
                   sigma0=sigma_at_boundary(params))

    def distance_to_boundary(self, mu):
        """Distance from mu to the constraint, reflecting a left constraint onto the right."""
        if self.direction is Direction.CONSTRAINT_ON_RIGHT:
            d = self.boundary - mu
        else:
            d = mu - self.boundary
        if d < 0:
            raise InfeasibleLocationError(mu)
        return d

    def sigma_for(self, mu):
        from truncdp.services.sigma_single_infinite import sigma_at_distance

        d = self.distance_to_boundary(mu)
        if d == 0.0:
            return self.sigma0
        return sigma_at_distance(self.params, d, sigma1=self.sigma0)

    def describe(self):
        return {
            'kind': 'single-infinite',
            'boundary': self.boundary,
            'direction': self.direction.value,
            'sigma0': self.sigma0,
        }

    def __repr__(self):
        return f'<SingleInfinitePlan boundary={self.boundary} {self.direction.value} sigma0={self.sigma0:.6g}>'


@dataclass(frozen=True)
class UniformPlan:
    """One sigma for every location. naive marks the plain delta_f / epsilon scale."""

    params: PrivacyParams
    sigma: float
    config_class: ConfigClass
    precision_d: int = None
    naive: bool = False

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValidationError(f'sigma must be a finite positive number, got {self.sigma!r}')
        ceiling = self.params.max_uniform_sigma * (1.0 + SIGMA_CEILING_SLACK)
        if self.config_class.uses_uniform_sigma and self.sigma > ceiling:
            raise ValidationError(
                f'uniform sigma {self.sigma!r} exceeds 2 * delta_f / epsilon = '
                f'{self.params.max_uniform_sigma!r}'
            )

    def sigma_for(self, mu):
        return self.sigma

    def describe(self):
        return {
            'kind': 'naive' if self.naive else 'uniform',
            'sigma': self.sigma,
            'precision': self.precision_d,
        }

    def __repr__(self):
        tag = ' naive' if self.naive else ''
        return f'<UniformPlan{tag} sigma={self.sigma:.10g} class={self.config_class.value}>'


@dataclass(frozen=True)
class FailingCondition:
    """
    One violated lower bound on sigma.

    index is a feasible-span index for 'regular' and 'symmetric' kinds and a
    constraint index for 'endpoint-pair'. location is the probe (or the right
    endpoint of the constraint) where it fails.
    """

    kind: str
    index: int
    location: float

    def __post_init__(self):
        if self.kind not in CONDITION_KINDS:
            raise ValidationError(f'unknown condition kind {self.kind!r}')

    def __str__(self):
        return f'{self.kind} condition #{self.index} at x={self.location:g}'


@dataclass(frozen=True)
class ConditionSlack:
    """Evaluated lower bound: holds while lhs <= bound."""

    kind: str
    index: int
    location: float
    lhs: float
    bound: float

    @property
    def slack(self):
        return self.bound - self.lhs

    @property
    def holds(self):
        return self.lhs <= self.bound

    def as_failing(self):
        return FailingCondition(kind=self.kind, index=self.index, location=self.location)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    failing_condition: FailingCondition = None

    def __post_init__(self):
        if self.feasible != (self.failing_condition is None):
            raise ValidationError('a failing condition is present iff the report is infeasible')

    def __bool__(self):
        return self.feasible

    def __repr__(self):
        if self.feasible:
            return '<FeasibilityReport feasible>'
        return f'<FeasibilityReport infeasible: {self.failing_condition}>'

"""
Constraint configurations: the publicly known ranges of a query in which
true responses cannot occur.

Constraints are open intervals, so their endpoints are feasible responses.
"""
import bisect
import math
from dataclasses import dataclass, field
from enum import Enum

from truncdp.errors import (
    EmptyFeasibleSpaceError,
    InfeasibleLocationError,
    ValidationError,
)

NEG_INF_TOKEN = '-inf'
POS_INF_TOKEN = '+inf'


def parse_extended_real(value):
    """
    Parse a number or one of the tokens '-inf' / '+inf' into a float.

    Raises:
        ValidationError: on NaN, booleans, other strings or other types.
    """
    if isinstance(value, str):
        if value == NEG_INF_TOKEN:
            return -math.inf
        if value == POS_INF_TOKEN:
            return math.inf
        raise ValidationError(f"expected a number, '-inf' or '+inf', got {value!r}")

    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f'expected a number, got {value!r}')

    value = float(value)
    if math.isnan(value):
        raise ValidationError('NaN is not a valid endpoint')
    if math.isinf(value):
        raise ValidationError("infinite endpoints must be written as '-inf' or '+inf'")
    return value


def format_extended_real(value):
    if value == -math.inf:
        return NEG_INF_TOKEN
    if value == math.inf:
        return POS_INF_TOKEN
    return value


@dataclass(frozen=True, order=True)
class Interval:
    """Open interval (left, right); left may be -inf, right may be +inf."""

    left: float
    right: float

    def __post_init__(self):
        left, right = float(self.left), float(self.right)
        if math.isnan(left) or math.isnan(right):
            raise ValidationError('interval endpoints must not be NaN')
        if left == math.inf or right == -math.inf:
            raise ValidationError(f'interval ({left}, {right}) has a misplaced infinite endpoint')
        if not left < right:
            raise ValidationError(f'interval ({left}, {right}) must satisfy left < right')
        object.__setattr__(self, 'left', left)
        object.__setattr__(self, 'right', right)

    @property
    def width(self):
        return self.right - self.left

    @property
    def is_finite(self):
        return math.isfinite(self.left) and math.isfinite(self.right)

    @property
    def is_infinite(self):
        return not self.is_finite

    def contains_strictly(self, x):
        return self.left < x < self.right

    def to_json(self):
        return [format_extended_real(self.left), format_extended_real(self.right)]

    def __str__(self):
        return f'({self.left:g}, {self.right:g})'

    def __repr__(self):
        return f'<Interval {self}>'


class ConfigClass(Enum):
    EMPTY = 'empty'
    SINGLE_INFINITE = 'single-infinite'
    ARBITRARY_FINITE = 'arbitrary-finite'
    ARBITRARY = 'arbitrary'

    @property
    def uses_uniform_sigma(self):
        return self in (ConfigClass.ARBITRARY_FINITE, ConfigClass.ARBITRARY)

    def __repr__(self):
        return f'<ConfigClass {self.value}>'


@dataclass(frozen=True)
class ConstraintConfig:
    """
    Sorted, pairwise disjoint constraints separated by strictly positive gaps.

    i_left / i_right flag a constraint spanning to -inf / +inf. Build it with
    normalize_config() unless the intervals are already normalized.
    """

    intervals: tuple = ()
    i_left: bool = False
    i_right: bool = False
    _lefts: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        intervals = tuple(self.intervals)
        object.__setattr__(self, 'intervals', intervals)
        object.__setattr__(self, '_lefts', tuple(c.left for c in intervals))

        for previous, current in zip(intervals, intervals[1:]):
            if not previous.right < current.left:
                raise ValidationError(
                    f'constraints {previous} and {current} are not sorted with a positive gap'
                )

        has_left = bool(intervals) and intervals[0].left == -math.inf
        has_right = bool(intervals) and intervals[-1].right == math.inf
        if self.i_left != has_left or self.i_right != has_right:
            raise ValidationError('i_left / i_right do not match the infinite constraints')
        if len(intervals) == 1 and has_left and has_right:
            raise EmptyFeasibleSpaceError('the constraints cover the whole real line')

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def endpoints(self):
        """All finite constraint endpoints in increasing order."""
        points = []
        for c in self.intervals:
            points.extend(p for p in (c.left, c.right) if math.isfinite(p))
        return points

    def containing_interval(self, x):
        """Return the constraint strictly containing x, or None."""
        k = bisect.bisect_left(self._lefts, x) - 1
        if k >= 0 and self.intervals[k].contains_strictly(x):
            return self.intervals[k]
        return None

    def is_feasible(self, x):
        if math.isnan(x):
            return False
        return self.containing_interval(x) is None

    def to_json(self):
        return [c.to_json() for c in self.intervals]

    def __repr__(self):
        body = ', '.join(str(c) for c in self.intervals)
        return f'<ConstraintConfig [{body}]>'


@dataclass(frozen=True)
class LocationView:
    """
    Distances from a location parameter mu to every constraint endpoint.

    left_finite / right_finite hold (dl, dr) pairs: distances to the left and
    right endpoint of each finite constraint on that side of mu.
    """

    mu: float
    left_finite: tuple = ()
    right_finite: tuple = ()
    dr_infinite: float = None
    dl_infinite: float = None

    @property
    def i_left(self):
        return self.dr_infinite is not None

    @property
    def i_right(self):
        return self.dl_infinite is not None

    def widths(self):
        """Widths of the finite constraints seen from mu."""
        return [dl - dr for dl, dr in self.left_finite] + [dr - dl for dl, dr in self.right_finite]


def _as_interval(raw):
    if isinstance(raw, Interval):
        return raw
    if isinstance(raw, dict):
        return Interval(parse_extended_real(raw['left']), parse_extended_real(raw['right']))
    left, right = raw
    return Interval(
        left if isinstance(left, float) and math.isinf(left) else parse_extended_real(left),
        right if isinstance(right, float) and math.isinf(right) else parse_extended_real(right),
    )


def normalize_config(raw):
    """
    Sort constraints, merge overlapping or touching ones, set the infinity flags.

    Args:
        raw: iterable of Interval, (left, right) pairs or {'left', 'right'} dicts

    Returns:
        ConstraintConfig

    Raises:
        EmptyFeasibleSpaceError: when the union covers the whole real line.
    """
    intervals = sorted(_as_interval(r) for r in raw)

    merged = []
    for current in intervals:
        if merged and current.left <= merged[-1].right:
            last = merged[-1]
            if current.right > last.right:
                merged[-1] = Interval(last.left, current.right)
        else:
            merged.append(current)

    if len(merged) == 1 and merged[0].left == -math.inf and merged[0].right == math.inf:
        raise EmptyFeasibleSpaceError('the constraints cover the whole real line')

    return ConstraintConfig(
        intervals=tuple(merged),
        i_left=bool(merged) and merged[0].left == -math.inf,
        i_right=bool(merged) and merged[-1].right == math.inf,
    )


def classify(config):
    """Return the ConfigClass of a configuration."""
    if not config.intervals:
        return ConfigClass.EMPTY
    if len(config.intervals) == 1 and config.intervals[0].is_infinite:
        return ConfigClass.SINGLE_INFINITE
    if not config.i_left and not config.i_right:
        return ConfigClass.ARBITRARY_FINITE
    return ConfigClass.ARBITRARY


def feasible_spans(config):
    """Complement of the constraint union as maximal intervals, in increasing order."""
    spans = []
    cursor = -math.inf
    for c in config.intervals:
        if c.left > cursor:
            spans.append(Interval(cursor, c.left))
        cursor = c.right
    if cursor < math.inf:
        spans.append(Interval(cursor, math.inf))
    return spans


def location_view(config, mu):
    """
    Distances from mu to every constraint.

    Raises:
        InfeasibleLocationError: when mu lies strictly inside a constraint.
    """
    mu = float(mu)
    if math.isnan(mu) or math.isinf(mu):
        raise ValidationError(f'location must be a finite number, got {mu!r}')

    inside = config.containing_interval(mu)
    if inside is not None:
        raise InfeasibleLocationError(mu, inside)

    left_finite, right_finite = [], []
    dr_infinite = dl_infinite = None
    for c in config.intervals:
        if c.left == -math.inf:
            dr_infinite = mu - c.right
        elif c.right == math.inf:
            dl_infinite = c.left - mu
        elif mu >= c.right:
            left_finite.append((mu - c.left, mu - c.right))
        else:
            right_finite.append((c.left - mu, c.right - mu))

    return LocationView(
        mu=mu,
        left_finite=tuple(left_finite),
        right_finite=tuple(right_finite),
        dr_infinite=dr_infinite,
        dl_infinite=dl_infinite,
    )


def reflect(config):
    """Horizontal reflection x -> -x; reflecting twice is the identity."""
    intervals = tuple(Interval(-c.right, -c.left) for c in reversed(config.intervals))
    return ConstraintConfig(intervals=intervals, i_left=config.i_right, i_right=config.i_left)

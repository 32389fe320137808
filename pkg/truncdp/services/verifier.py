"""
Brute-force check of the privacy guarantee on grids of locations and outputs.

For two true responses f1 >= f2, i = (f1 - f2) / delta_f spans of delta_f
apart, the densities of their mechanisms must stay within a factor e^(i eps)
of each other at every output x, in both directions.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from config import Config
from truncdp.errors import ValidationError
from truncdp.models.constraint import ConfigClass, feasible_spans, normalize_config
from truncdp.services.mechanism_service import build
from truncdp.services.sigma_uniform import naive_plan

logger = logging.getLogger(__name__)

RATIO_SLACK = 1e-9

# Failures logged individually before switching to DEBUG
LOGGED_FAILURES = 5

# Neighbour of a constraint endpoint: this many delta_f / epsilon inside the span
ANCHOR_OFFSET = 1e-3


@dataclass(frozen=True)
class GuaranteeEvaluation:
    f1: float
    f2: float
    i: float
    x: float
    ratio_forward: float
    ratio_backward: float
    bound: float
    passed: bool

    @property
    def worst_ratio(self):
        return max(self.ratio_forward, self.ratio_backward)

    @property
    def ratio_over_bound(self):
        return self.worst_ratio / self.bound

    def to_dict(self):
        return {
            'f1': self.f1,
            'f2': self.f2,
            'i': self.i,
            'x': self.x,
            'ratio_forward': self.ratio_forward,
            'ratio_backward': self.ratio_backward,
            'bound': self.bound,
            'ratio_over_bound': self.ratio_over_bound,
            'pass': self.passed,
        }

    def __str__(self):
        status = 'pass' if self.passed else 'FAIL'
        return (
            f'{status}: f1={self.f1:g} f2={self.f2:g} i={self.i:g} x={self.x:g} '
            f'forward={self.ratio_forward:.10g} backward={self.ratio_backward:.10g} '
            f'bound={self.bound:.10g}'
        )


@dataclass
class VerificationReport:
    total_checks: int = 0
    failures: list = field(default_factory=list)
    max_ratio_over_bound: float = 0.0
    worst: GuaranteeEvaluation = None

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            'total_checks': self.total_checks,
            'failures': len(self.failures),
            'max_ratio_over_bound': self.max_ratio_over_bound,
            'worst': self.worst.to_dict() if self.worst else None,
        }


def _safe_exp(value):
    return math.inf if value > 709.0 else math.exp(value)


class GuaranteeVerifier:
    """Evaluates the guarantee for one (config, params, plan), caching a mechanism per location."""

    def __init__(self, config, params, plan):
        self.config = config
        self.params = params
        self.plan = plan
        self._mechanisms = {}

    def mechanism(self, mu):
        mu = float(mu)
        mech = self._mechanisms.get(mu)
        if mech is None:
            mech = build(self.config, self.params, mu, plan=self.plan)
            self._mechanisms[mu] = mech
        return mech

    def _log_density(self, mech, xs):
        return np.log(mech.n) - np.abs(mech.mu - xs) / mech.sigma - np.log(2.0 * mech.sigma)

    def _check_order(self, f1, f2):
        if f1 < f2:
            raise ValidationError(f'expected f1 >= f2, got f1={f1!r}, f2={f2!r}')

    def evaluate_pair(self, f1, f2, x):
        """Both density ratios of the mechanisms at f1 and f2 at the output x."""
        self._check_order(f1, f2)
        mech1, mech2 = self.mechanism(f1), self.mechanism(f2)
        i = self.params.distance_index(f1 - f2)
        bound = self.params.bound(i)

        if not self.config.is_feasible(x) or math.isinf(x):
            return GuaranteeEvaluation(f1=f1, f2=f2, i=i, x=x, ratio_forward=1.0,
                                       ratio_backward=1.0, bound=bound, passed=True)

        xs = np.array([x], dtype=float)
        log_ratio = float(self._log_density(mech1, xs)[0] - self._log_density(mech2, xs)[0])
        forward, backward = _safe_exp(log_ratio), _safe_exp(-log_ratio)
        limit = bound * (1.0 + RATIO_SLACK)
        return GuaranteeEvaluation(
            f1=f1, f2=f2, i=i, x=x, ratio_forward=forward, ratio_backward=backward,
            bound=bound, passed=forward <= limit and backward <= limit,
        )

    def _anchor_offset(self, span):
        offset = ANCHOR_OFFSET * self.params.laplace_scale
        if math.isfinite(span.width):
            offset = min(offset, span.width / 4.0)
        return offset

    def location_grid(self, n_locations, max_i):
        """
        Feasible locations: an even grid over the constrained region widened
        by max_i * delta_f, every finite constraint endpoint and a close
        neighbour of each endpoint inside its feasible span.
        """
        reach = max_i * self.params.delta_f
        endpoints = self.config.endpoints
        if endpoints:
            lo = endpoints[0] if self.config.i_left else endpoints[0] - reach
            hi = endpoints[-1] if self.config.i_right else endpoints[-1] + reach
        else:
            lo, hi = -reach, reach

        points = set(np.linspace(lo, hi, n_locations).tolist())
        for span in feasible_spans(self.config):
            offset = self._anchor_offset(span)
            if math.isfinite(span.left):
                points.update((span.left, span.left + offset))
            if math.isfinite(span.right):
                points.update((span.right, span.right - offset))

        return sorted(p for p in points if self.config.is_feasible(p))

    def output_grid(self, f1, f2, n_outputs, padding=Config.VERIFY_OUTPUT_PADDING, tail_sigmas=None):
        """
        Feasible outputs between both locations and every finite constraint
        endpoint, padded by padding * delta_f / epsilon, optionally widened
        to tail_sigmas scales around each location.
        """
        pad = padding * self.params.laplace_scale
        endpoints = self.config.endpoints
        lo = min([f2] + endpoints) - pad
        hi = max([f1] + endpoints) + pad
        if tail_sigmas is not None:
            for mech in (self.mechanism(f1), self.mechanism(f2)):
                lo = min(lo, mech.mu - tail_sigmas * mech.sigma)
                hi = max(hi, mech.mu + tail_sigmas * mech.sigma)

        xs = np.concatenate([np.linspace(lo, hi, n_outputs), [f1, f2], endpoints])
        xs = np.unique(xs)
        feasible = np.array([self.config.is_feasible(x) for x in xs], dtype=bool)
        return xs[feasible]

    def verify_grid(self, n_locations=Config.VERIFY_LOCATIONS, n_outputs=Config.VERIFY_OUTPUTS,
                    max_i=Config.VERIFY_MAX_I, padding=Config.VERIFY_OUTPUT_PADDING, tail_sigmas=None):
        if n_locations < 2 or n_outputs < 2:
            raise ValidationError('the verification grid needs at least 2 locations and 2 outputs')
        if not max_i > 0:
            raise ValidationError(f'max_i must be positive, got {max_i!r}')

        report = VerificationReport()
        max_log_excess = -math.inf
        locations = self.location_grid(n_locations, max_i)
        reach = max_i * self.params.delta_f * (1.0 + 1e-12)
        log_slack = math.log1p(RATIO_SLACK)

        for a, f2 in enumerate(locations):
            for f1 in locations[a + 1:]:
                if f1 - f2 > reach:
                    break
                xs = self.output_grid(f1, f2, n_outputs, padding, tail_sigmas)
                log_ratio = self._log_density(self.mechanism(f1), xs) - self._log_density(self.mechanism(f2), xs)
                log_bound = (f1 - f2) / self.params.delta_f * self.params.epsilon
                excess = np.abs(log_ratio) - log_bound
                report.total_checks += len(xs)

                k = int(np.argmax(excess))
                if excess[k] > max_log_excess:
                    max_log_excess = float(excess[k])
                    report.worst = self.evaluate_pair(f1, f2, float(xs[k]))

                for j in np.flatnonzero(excess > log_slack):
                    evaluation = self.evaluate_pair(f1, f2, float(xs[j]))
                    report.failures.append(evaluation)
                    if len(report.failures) <= LOGGED_FAILURES:
                        logger.info(f'guarantee violated: {evaluation}')
                    else:
                        logger.debug(f'guarantee violated: {evaluation}')

        report.max_ratio_over_bound = _safe_exp(max_log_excess) if report.total_checks else 0.0
        logger.info(
            f'verified {report.total_checks} checks over {len(locations)} locations: '
            f'{len(report.failures)} failures, max ratio/bound {report.max_ratio_over_bound:.12g}'
        )
        return report


def evaluate_pair(config, params, plan, f1, f2, x):
    return GuaranteeVerifier(config, params, plan).evaluate_pair(f1, f2, x)


def verify_grid(config, params, plan, n_locations=Config.VERIFY_LOCATIONS, n_outputs=Config.VERIFY_OUTPUTS,
                max_i=Config.VERIFY_MAX_I, padding=Config.VERIFY_OUTPUT_PADDING, tail_sigmas=None):
    """
    Evaluate every location pair up to max_i * delta_f apart on every output of its grid.

    Returns:
        VerificationReport; failures is empty when the plan passes.
    """
    verifier = GuaranteeVerifier(config, params, plan)
    return verifier.verify_grid(n_locations, n_outputs, max_i, padding, tail_sigmas)


def naive_violation_demo(params, i=1.0):
    """
    The plain delta_f / epsilon scale next to a left-infinite constraint:
    f2 on the boundary, f1 = f2 + i * delta_f, output on the boundary.

    The backward ratio there is 2e^(i eps) - 1, above the bound e^(i eps).
    Both locations share one scale but only the boundary location has n = 2,
    so the excess shows in p(x | f2) / p(x | f1), the direction with f1 >= f2.
    """
    if not i > 0:
        raise ValidationError(f'distance index must be positive, got {i!r}')
    config = normalize_config([('-inf', 0.0)])
    plan = naive_plan(params, ConfigClass.SINGLE_INFINITE)
    evaluation = evaluate_pair(config, params, plan, f1=i * params.delta_f, f2=0.0, x=0.0)
    logger.info(f'naive scale next to an infinite constraint: {evaluation}')
    return evaluation

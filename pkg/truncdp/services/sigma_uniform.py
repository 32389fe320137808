"""
Smallest uniform scale for configurations with several constraints.

A uniform sigma is feasible when three families of lower bounds hold:

- regular: inside every feasible span, the log-density ratio of two nearby
  locations grows no faster than epsilon per delta_f;
- symmetric: the same on the reflected configuration;
- endpoint-pair: the two endpoints of every finite constraint, which are
  adjacent in the feasible space though w apart, keep their ratio below
  e^(w * epsilon / delta_f).

Feasibility is upward closed in sigma and 2 * delta_f / epsilon is always
feasible, so the optimum is found by binary search on a decimal grid.
"""
import logging
import math

import numpy as np

from config import Config
from truncdp.errors import ConvergenceError, UnsupportedConfigClassError, ValidationError
from truncdp.models.constraint import (
    ConfigClass,
    classify,
    feasible_spans,
    location_view,
    reflect,
)
from truncdp.models.plan import ConditionSlack, FeasibilityReport, UniformPlan
from truncdp.services.laplace_core import (
    mass_left,
    mass_right,
    normalization,
    removed_mass_profile,
)

logger = logging.getLogger(__name__)

# Relative slack on epsilon; keeps sigma = 2 * delta_f / epsilon feasible next to an infinite constraint
CONDITION_SLACK = 1e-12

MAX_PRECISION = 12


def span_lhs(l, r, params, sigma):
    """delta_f (2L - 1) / (sigma (L + R - 1)); works on scalars and arrays."""
    return params.delta_f * (2.0 * l - 1.0) / (sigma * (l + r - 1.0))


def _span_bound(params):
    return params.epsilon * (1.0 + CONDITION_SLACK)


def span_condition(config, params, sigma, mu):
    """Whether the regular lower bound holds at the feasible location mu."""
    view = location_view(config, mu)
    lhs = span_lhs(mass_left(view, sigma), mass_right(view, sigma), params, sigma)
    return lhs <= _span_bound(params)


def uniform_guarantee_lhs(l1, r1, i, sigma, params):
    """
    Worst density ratio between a location with removed masses (l1, r1) and
    one i * delta_f to its left in the same feasible span, both at scale sigma.
    """
    a = i * params.delta_f / sigma
    return (1.0 - l1 * math.exp(a) - r1 * math.exp(-a)) / (1.0 - l1 - r1) * math.exp(a)


def _finite_constraint(config, k):
    try:
        constraint = config.intervals[k]
    except IndexError:
        raise ValidationError(f'no constraint #{k} in {config!r}')
    if not constraint.is_finite:
        raise ValidationError(f'constraint #{k} {constraint} is not finite')
    return constraint


def endpoint_pair_log_lhs(config, params, sigma, k):
    """
    Log of the density ratio, at the right endpoint of constraint k as
    output, between a true response on that right endpoint and one on the
    left endpoint: log(surviving mass at left / surviving mass at right) + w / sigma.
    """
    constraint = _finite_constraint(config, k)
    left_end = normalization(location_view(config, constraint.left), sigma)
    right_end = normalization(location_view(config, constraint.right), sigma)
    return (
        math.log(left_end.surviving)
        - math.log(right_end.surviving)
        + constraint.width / sigma
    )


def endpoint_pair_lhs(config, params, sigma, k):
    log_lhs = endpoint_pair_log_lhs(config, params, sigma, k)
    return math.inf if log_lhs > 709.0 else math.exp(log_lhs)


def _endpoint_pair_log_bound(params, width):
    i = params.distance_index(width)
    return i * params.epsilon * (1.0 + CONDITION_SLACK) + CONDITION_SLACK


def endpoint_pair_condition(config, params, sigma, k):
    """Whether the endpoint-pair bound holds for the finite constraint k."""
    width = _finite_constraint(config, k).width
    return endpoint_pair_log_lhs(config, params, sigma, k) <= _endpoint_pair_log_bound(params, width)


def _probe_window(config, params, cutoff_factor):
    cutoff = cutoff_factor * params.max_uniform_sigma
    endpoints = config.endpoints
    if not endpoints:
        return -cutoff, cutoff
    return endpoints[0] - cutoff, endpoints[-1] + cutoff


def span_probes(config, params, span, n_probes=Config.SPAN_PROBES, cutoff_factor=Config.PROBE_CUTOFF_FACTOR):
    """Both ends of the span (cut off when infinite) and n_probes interior points."""
    lo, hi = _probe_window(config, params, cutoff_factor)
    left = span.left if math.isfinite(span.left) else lo
    right = span.right if math.isfinite(span.right) else hi
    return np.linspace(left, right, n_probes + 2)


def _span_slacks(config, params, sigma, kind, n_probes, cutoff_factor):
    mirrored = kind == 'symmetric'
    target = reflect(config) if mirrored else config
    spans = feasible_spans(target)
    bound = _span_bound(params)

    for idx, span in enumerate(spans):
        probes = span_probes(target, params, span, n_probes, cutoff_factor)
        l, r = removed_mass_profile(target, sigma, probes)
        lhs = span_lhs(l, r, params, sigma)
        worst = int(np.argmax(lhs))
        location = float(probes[worst])
        yield ConditionSlack(
            kind=kind,
            index=len(spans) - 1 - idx if mirrored else idx,
            location=-location if mirrored else location,
            lhs=float(lhs[worst]),
            bound=bound,
        )


def _endpoint_slacks(config, params, sigma):
    for k, constraint in enumerate(config.intervals):
        if not constraint.is_finite:
            continue
        yield ConditionSlack(
            kind='endpoint-pair',
            index=k,
            location=constraint.right,
            lhs=endpoint_pair_log_lhs(config, params, sigma, k),
            bound=_endpoint_pair_log_bound(params, constraint.width),
        )


def _all_slacks(config, params, sigma, n_probes, cutoff_factor):
    yield from _span_slacks(config, params, sigma, 'regular', n_probes, cutoff_factor)
    yield from _span_slacks(config, params, sigma, 'symmetric', n_probes, cutoff_factor)
    yield from _endpoint_slacks(config, params, sigma)


def _check_sigma(sigma):
    if not (sigma > 0 and math.isfinite(sigma)):
        raise ValidationError(f'sigma must be a finite positive number, got {sigma!r}')


def feasible(config, params, sigma, n_probes=Config.SPAN_PROBES, cutoff_factor=Config.PROBE_CUTOFF_FACTOR):
    """
    Check every lower bound for a uniform sigma.

    Returns:
        FeasibilityReport naming the first failing condition, in the order
        regular spans, symmetric spans, endpoint pairs.
    """
    _check_sigma(sigma)
    for entry in _all_slacks(config, params, sigma, n_probes, cutoff_factor):
        if not entry.holds:
            return FeasibilityReport(feasible=False, failing_condition=entry.as_failing())
    return FeasibilityReport(feasible=True)


def lower_bound_report(config, params, sigma, n_probes=Config.SPAN_PROBES, cutoff_factor=Config.PROBE_CUTOFF_FACTOR):
    """Every lower bound evaluated at sigma, binding or not."""
    _check_sigma(sigma)
    return list(_all_slacks(config, params, sigma, n_probes, cutoff_factor))


def _check_precision(precision_d):
    if isinstance(precision_d, bool) or not isinstance(precision_d, int):
        raise ValidationError(f'precision must be an integer, got {precision_d!r}')
    if not 0 <= precision_d <= MAX_PRECISION:
        raise ValidationError(f'precision must be between 0 and {MAX_PRECISION}, got {precision_d}')


def optimal_uniform_sigma(config, params, precision_d=Config.SIGMA_PRECISION,
                          n_probes=Config.SPAN_PROBES, cutoff_factor=Config.PROBE_CUTOFF_FACTOR):
    """
    Smallest feasible sigma on the 10^-precision_d grid, capped at 2 * delta_f / epsilon.

    Args:
        config: ConstraintConfig of class empty, arbitrary-finite or arbitrary
        params: PrivacyParams
        precision_d: number of decimal places of the result

    Returns:
        UniformPlan

    Raises:
        UnsupportedConfigClassError: for a single-infinite configuration.
        ConvergenceError: when 2 * delta_f / epsilon itself is reported infeasible.
    """
    _check_precision(precision_d)
    config_class = classify(config)

    if config_class is ConfigClass.SINGLE_INFINITE:
        raise UnsupportedConfigClassError(
            'a single-infinite configuration takes a distance-dependent scale'
        )
    if config_class is ConfigClass.EMPTY:
        return UniformPlan(params=params, sigma=params.laplace_scale,
                           config_class=config_class, precision_d=precision_d)

    def is_feasible(sigma):
        return feasible(config, params, sigma, n_probes, cutoff_factor).feasible

    upper = params.max_uniform_sigma
    report = feasible(config, params, upper, n_probes, cutoff_factor)
    if not report.feasible:
        raise ConvergenceError(
            f'2 * delta_f / epsilon = {upper!r} is infeasible for {config!r}: {report.failing_condition}'
        )

    scale = 10 ** precision_d
    lo, hi = 0, math.floor(upper * scale)
    if hi == 0 or not is_feasible(hi / scale):
        sigma = upper
    else:
        steps = 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if is_feasible(mid / scale):
                hi = mid
            else:
                lo = mid
            steps += 1
            logger.debug(f'binary search step {steps}: bracket ({lo / scale}, {hi / scale}]')
        sigma = hi / scale

    if config_class is ConfigClass.ARBITRARY_FINITE and sigma >= upper:
        logger.warning(
            f'sigma {sigma!r} for {config!r} reached 2 * delta_f / epsilon at precision {precision_d}'
        )

    logger.info(f'uniform sigma for {config!r} ({config_class.value}): {sigma!r}')
    return UniformPlan(params=params, sigma=sigma, config_class=config_class, precision_d=precision_d)


def naive_plan(params, config_class=ConfigClass.EMPTY):
    """The plain Laplace scale delta_f / epsilon, ignoring the constraints."""
    return UniformPlan(params=params, sigma=params.laplace_scale,
                       config_class=config_class, naive=True)

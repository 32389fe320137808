"""
Optimal distance-dependent scale for a configuration with a single infinite
constraint.

sigma depends only on the distance d between the true response and the
finite endpoint (boundary) of the constraint. With i = d / delta_f and
sigma1 the scale on the boundary:

    A = -(2 i dF / sigma1) e^(-i eps) e^(-i dF e^(-i eps) / sigma1)
    sigma(d) = -i dF / (W_Z(A) + i dF e^(-i eps) / sigma1)

Z is the principal branch up to i = 1 / eps and the -1 branch after it.
A constraint on the left is handled by reflecting it onto the right.
"""
import logging
import math

from truncdp.errors import NegativeDistanceError, ValidationError
from truncdp.services.special_functions import (
    LOG_UNDERFLOW,
    BranchIndex,
    lambert_w,
    lambert_w_minus_one_of_log,
)

logger = logging.getLogger(__name__)

HALF_INVERSE_E = -1.0 / (2.0 * math.e)

# |A| below this: W0(A) from its Taylor series
SMALL_ARGUMENT = 1e-8

BOUND_SLACK = 1e-9


def sigma_at_boundary(params):
    """sigma1 = -delta_f / (W0(-1/(2e)) * e * epsilon), about 1.586 * delta_f / epsilon."""
    w = lambert_w(BranchIndex.PRINCIPAL, HALF_INVERSE_E)
    return -params.delta_f / (w * math.e * params.epsilon)


def branch_for(params, i):
    """Principal branch up to i = 1 / epsilon inclusive, -1 branch beyond."""
    if i * params.epsilon <= 1.0:
        return BranchIndex.PRINCIPAL
    return BranchIndex.MINUS_ONE


def _scaled_lambert_term(branch, params, i, sigma1):
    """
    W_branch(A) / d together with the companion term e^(-i eps) / sigma1.

    Both terms of the denominator are of order d, so dividing through by d
    keeps small distances away from underflow.
    """
    d = i * params.delta_f
    decay = math.exp(-i * params.epsilon)
    t = d * decay / sigma1
    log_neg_a = math.log(2.0) + math.log(d) - math.log(sigma1) - i * params.epsilon - t
    a_over_d = -(2.0 / sigma1) * math.exp(-i * params.epsilon - t)

    if branch is BranchIndex.PRINCIPAL:
        if log_neg_a < math.log(SMALL_ARGUMENT):
            a = -math.exp(log_neg_a)
            w_over_d = a_over_d * (1.0 - a + 1.5 * a * a)
        else:
            w_over_d = lambert_w(branch, -math.exp(log_neg_a)) / d
    elif log_neg_a < LOG_UNDERFLOW:
        w_over_d = lambert_w_minus_one_of_log(log_neg_a) / d
    else:
        w_over_d = lambert_w(branch, -math.exp(log_neg_a)) / d

    return w_over_d, decay / sigma1


def _scale_from_branch(branch, params, i, sigma1):
    w_over_d, companion = _scaled_lambert_term(branch, params, i, sigma1)
    return -1.0 / (w_over_d + companion)


def sigma_at_distance(params, d, sigma1=None):
    """
    Optimal scale for a true response at distance d from the boundary.

    Args:
        params: PrivacyParams
        d: distance in response units, d >= 0
        sigma1: scale on the boundary; computed when omitted

    Returns:
        sigma > 0; sigma1 for d = 0.

    Raises:
        NegativeDistanceError: for d < 0.
    """
    if math.isnan(d):
        raise ValidationError('distance must not be NaN')
    if d < 0:
        raise NegativeDistanceError(f'distance to the boundary must be >= 0, got {d!r}')
    if sigma1 is None:
        sigma1 = sigma_at_boundary(params)
    if d == 0:
        return sigma1
    if math.isinf(d):
        return params.laplace_scale

    i = params.distance_index(d)
    sigma = _scale_from_branch(branch_for(params, i), params, i, sigma1)
    if not sigma > 0:
        raise ValidationError(f'non-positive scale {sigma!r} at distance {d!r}')
    return sigma


def principal_upper_bound(params, i, sigma1):
    """Largest sigma2 allowed by the principal-branch solution."""
    return _scale_from_branch(BranchIndex.PRINCIPAL, params, i, sigma1)


def minus_one_lower_bound(params, i, sigma1):
    """Smallest sigma2 allowed by the -1-branch solution."""
    return _scale_from_branch(BranchIndex.MINUS_ONE, params, i, sigma1)


def _shifted_terms(params, i):
    w = lambert_w(BranchIndex.PRINCIPAL, HALF_INVERSE_E)
    c = w * i * params.epsilon * math.exp(1.0 - i * params.epsilon)
    b = 2.0 * w * i * params.epsilon * math.exp(c - i * params.epsilon + 1.0)
    return c, b


def shifted_lower_bound(params, i):
    """sigma2 >= i dF / (c - W0(B)) on the outer span."""
    c, b = _shifted_terms(params, i)
    return i * params.delta_f / (c - lambert_w(BranchIndex.PRINCIPAL, b))


def shifted_upper_bound(params, i):
    """sigma2 <= i dF / (c - W-1(B)) on the inner span."""
    c, b = _shifted_terms(params, i)
    return i * params.delta_f / (c - lambert_w(BranchIndex.MINUS_ONE, b))


def check_isolation_bounds(params, i, sigma1, sigma2):
    """
    Whether sigma2 lies inside the region cut out by the four isolation
    inequalities: below the principal bound, above the -1 bound, and on one
    of the two spans delimited by the shifted bounds.

    Raises:
        LambertDomainError: when (sigma1, i) push a LambertW input below -1/e.
    """
    if not i > 0:
        raise ValidationError(f'distance index must be > 0, got {i!r}')
    if not (sigma1 > 0 and sigma2 > 0):
        raise ValidationError('sigma1 and sigma2 must be positive')

    upper = principal_upper_bound(params, i, sigma1)
    lower = minus_one_lower_bound(params, i, sigma1)
    outer = shifted_lower_bound(params, i)
    inner = shifted_upper_bound(params, i)

    holds = (
        sigma2 <= upper * (1.0 + BOUND_SLACK)
        and sigma2 >= lower * (1.0 - BOUND_SLACK)
        and (sigma2 >= outer * (1.0 - BOUND_SLACK) or sigma2 <= inner * (1.0 + BOUND_SLACK))
    )
    logger.debug(
        f'isolation bounds at i={i:g}: sigma2={sigma2:.12g} upper={upper:.12g} '
        f'lower={lower:.12g} outer={outer:.12g} inner={inner:.12g} -> {holds}'
    )
    return holds


def single_infinite_guarantee_lhs(params, sigma1, sigma2, i, dl1=0.0):
    """
    Density ratio p1 / p2 at the boundary for a location at distance dl1
    (scale sigma1) against one a further i * delta_f away (scale sigma2).
    """
    if dl1 < 0:
        raise NegativeDistanceError(f'distance to the boundary must be >= 0, got {dl1!r}')
    far = dl1 + i * params.delta_f
    return (
        (sigma2 / sigma1)
        * (2.0 - math.exp(-far / sigma2))
        / (2.0 - math.exp(-dl1 / sigma1))
        * math.exp(far / sigma2 - dl1 / sigma1)
    )


def plan_for_config(config, params):
    from truncdp.models.plan import SingleInfinitePlan

    plan = SingleInfinitePlan.from_config(config, params)
    logger.debug(f'single-infinite plan for {config!r}: sigma0={plan.sigma0:.10g}')
    return plan

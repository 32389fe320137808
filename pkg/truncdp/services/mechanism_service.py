"""
Service for building truncated Laplace mechanisms and drawing samples.
"""
import logging
import math

import numpy as np

from config import Config
from truncdp.errors import InfeasibleLocationError, ValidationError
from truncdp.models.constraint import ConfigClass, classify
from truncdp.models.mechanism import MIN_DEVIATE, TruncatedLaplace
from truncdp.services.sigma_single_infinite import plan_for_config
from truncdp.services.sigma_uniform import optimal_uniform_sigma

logger = logging.getLogger(__name__)


def plan_for(config, params, precision_d=Config.SIGMA_PRECISION):
    """
    Pick the scale plan for a configuration by its class.

    Empty: delta_f / epsilon. Single-infinite: distance-dependent plan.
    Arbitrary-finite and arbitrary: smallest feasible uniform sigma.
    """
    config_class = classify(config)
    if config_class is ConfigClass.SINGLE_INFINITE:
        plan = plan_for_config(config, params)
    else:
        plan = optimal_uniform_sigma(config, params, precision_d=precision_d)
    logger.info(f'plan for {config!r} ({config_class.value}): {plan!r}')
    return plan


def build(config, params, true_response, plan=None):
    """
    Build the mechanism for a true query response.

    Args:
        config: ConstraintConfig
        params: PrivacyParams
        true_response: feasible true response, the location parameter
        plan: scale plan; chosen by class when omitted

    Returns:
        TruncatedLaplace

    Raises:
        InfeasibleLocationError: when true_response lies inside a constraint.
    """
    true_response = float(true_response)
    if math.isnan(true_response) or math.isinf(true_response):
        raise ValidationError(f'true response must be finite, got {true_response!r}')

    inside = config.containing_interval(true_response)
    if inside is not None:
        raise InfeasibleLocationError(true_response, inside)

    if plan is None:
        plan = plan_for(config, params)

    sigma = plan.sigma_for(true_response)
    mech = TruncatedLaplace.create(config, true_response, sigma, params=params)
    logger.debug(f'built {mech!r}')
    return mech


def uniform_stream(seed, n):
    """n doubles in [0, 1) from numpy's PCG64 generator seeded with seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.random(n)


def sample_many(mech, n, seed=Config.SAMPLE_SEED):
    """
    Draw n noisy responses; identical (mech, n, seed) give identical output.

    Returns:
        numpy array of feasible responses.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f'sample count must be a positive integer, got {n!r}')
    u = np.maximum(uniform_stream(seed, n), MIN_DEVIATE)
    return mech.quantile_many(u)

"""
Real-valued LambertW function on the principal and -1 branches.

The series / asymptotic initial guesses and the Halley update follow
Corless, Gonnet, Hare, Jeffrey and Knuth, "On the Lambert W Function",
Advances in Computational Mathematics 5 (1996).
"""
import logging
import math
from enum import Enum

from truncdp.errors import ConvergenceError, LambertDomainError

logger = logging.getLogger(__name__)

BRANCH_POINT = -math.exp(-1.0)

# Inputs drifting this far below -1/e are treated as -1/e
CLAMP_TOLERANCE = 1e-12

STEP_TOLERANCE = 1e-15

# Residual |w e^w - x| accepted as converged, in ulps of x
RESIDUAL_ULPS = 4

# Steps that no longer shrink below this are rounding noise
NOISE_STEP = 1e-6
MAX_ITERATIONS = 100

# Below this distance to the branch point the series guess is used
SERIES_WINDOW = 0.25

# exp() of anything smaller loses precision in the subnormal range
LOG_UNDERFLOW = -700.0


class BranchIndex(Enum):
    PRINCIPAL = 0
    MINUS_ONE = -1

    def __repr__(self):
        return f'<BranchIndex {self.name}>'


def _branch_point_series(x, branch):
    """Puiseux series around -1/e, p = sqrt(2(ex + 1))."""
    p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
    if branch is BranchIndex.MINUS_ONE:
        p = -p
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3


def _initial_guess(x, branch):
    if x - BRANCH_POINT <= SERIES_WINDOW:
        return _branch_point_series(x, branch)

    if branch is BranchIndex.MINUS_ONE:
        # x in (-1/e + window, 0): w = L1 - L2 + L2 / L1
        l1 = math.log(-x)
        l2 = math.log(-l1)
        return l1 - l2 + l2 / l1

    if x < 3.0:
        return math.log1p(x)

    l1 = math.log(x)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def _halley(x, w):
    """
    Halley iteration for w * e^w = x.

    Converged once the residual is within RESIDUAL_ULPS of x or the step
    drops below STEP_TOLERANCE. Next to -1/e the derivative e^w (w + 1)
    vanishes and rounding noise in the residual puts a floor under the
    step; once steps stop shrinking the best iterate seen is returned.
    """
    tolerance = RESIDUAL_ULPS * math.ulp(abs(x))
    best_w, best_residual = w, math.inf
    last_step = math.inf

    for _ in range(MAX_ITERATIONS):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) < best_residual:
            best_w, best_residual = w, abs(f)
        if abs(f) <= tolerance:
            return w

        w1 = w + 1.0
        if w1 == 0.0:
            return w
        dw = f / (ew * w1 - (w + 2.0) * f / (2.0 * w1))
        if not math.isfinite(dw):
            return best_w

        step = abs(dw)
        if step <= STEP_TOLERANCE * max(1.0, abs(w)):
            return w - dw
        if step >= last_step and step <= NOISE_STEP * max(1.0, abs(w)):
            logger.debug(f'LambertW Halley steps stalled at {step:.3g} for x={x!r}')
            return best_w
        last_step = step
        w -= dw

    raise ConvergenceError(f'LambertW Halley iteration did not converge for x={x!r}')


def lambert_w(branch, x):
    """
    Evaluate W_branch(x), the real inverse of w -> w * e^w.

    Args:
        branch: BranchIndex.PRINCIPAL (W >= -1) or BranchIndex.MINUS_ONE (W <= -1)
        x: real input, x >= -1/e; x < 0 as well for the -1 branch

    Returns:
        w with w * e^w = x on the requested branch.
    """
    x = float(x)
    if math.isnan(x):
        raise LambertDomainError('LambertW input is NaN')

    if x < BRANCH_POINT:
        if x < BRANCH_POINT - CLAMP_TOLERANCE:
            raise LambertDomainError(f'LambertW input {x!r} is below -1/e')
        logger.debug(f'LambertW input {x!r} clamped to -1/e')
        x = BRANCH_POINT

    if branch is BranchIndex.MINUS_ONE and x >= 0.0:
        raise LambertDomainError(f'LambertW -1 branch is undefined for x={x!r} >= 0')

    if x == BRANCH_POINT:
        return -1.0
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf

    w = _halley(x, _initial_guess(x, branch))

    # Keep the result on its branch when the iteration lands on the far side of -1
    if branch is BranchIndex.PRINCIPAL:
        return max(w, -1.0)
    return min(w, -1.0)


def lambert_w_minus_one_of_log(log_neg_x):
    """
    W_{-1}(x) for x = -exp(log_neg_x), for inputs too close to 0 to represent.

    Solves w + ln(-w) = log_neg_x by Newton iteration.
    """
    if log_neg_x > LOG_UNDERFLOW:
        return lambert_w(BranchIndex.MINUS_ONE, -math.exp(log_neg_x))

    w = log_neg_x - math.log(-log_neg_x)
    for _ in range(MAX_ITERATIONS):
        g = w + math.log(-w) - log_neg_x
        dw = g / (1.0 + 1.0 / w)
        w -= dw
        if abs(dw) <= STEP_TOLERANCE * max(1.0, abs(w)):
            return min(w, -1.0)

    raise ConvergenceError(f'LambertW log-space iteration did not converge for ln(-x)={log_neg_x!r}')

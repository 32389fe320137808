"""
Laplace density and CDF, and the mass the constraints remove from it.

For a location mu, L is the Laplace mass falling inside constraints to the
left of mu and R the mass inside constraints to the right. The truncated
density is n * Lap(x | mu, sigma) on the feasible space, n = 1 / (1 - (L + R)).
"""
import math
from dataclasses import dataclass

import numpy as np

from truncdp.errors import DegenerateMassError, NegativeDistanceError, ValidationError

# 1 - (L + R) at or below this is treated as "all mass removed"
DEGENERATE_MASS = 1e-12


@dataclass(frozen=True)
class LaplaceParams:
    mu: float
    sigma: float

    def __post_init__(self):
        _check_sigma(self.sigma)
        if not math.isfinite(self.mu):
            raise ValidationError(f'mu must be finite, got {self.mu!r}')


@dataclass(frozen=True)
class MassBreakdown:
    """Removed mass left (l) and right (r) of mu, and the normalization factor n."""

    l: float
    r: float
    n: float

    @property
    def surviving(self):
        return 1.0 - (self.l + self.r)

    def __repr__(self):
        return f'<MassBreakdown l={self.l:.6g} r={self.r:.6g} n={self.n:.6g}>'


def _check_sigma(sigma):
    if not sigma > 0 or not math.isfinite(sigma):
        raise ValidationError(f'sigma must be a finite positive number, got {sigma!r}')


def laplace_pdf(x, p):
    """Lap(x | mu, sigma); x may be a scalar or an array."""
    return np.exp(-np.abs(p.mu - x) / p.sigma) / (2.0 * p.sigma)


def laplace_cdf(x, p):
    if x < p.mu:
        return 0.5 * math.exp(-(p.mu - x) / p.sigma)
    return 1.0 - 0.5 * math.exp(-(x - p.mu) / p.sigma)


def interval_mass(a, b, mu, sigma):
    """
    Laplace(mu, sigma) mass of [a, b]; a may be -inf and b +inf.

    Uses the tail forms on each side of mu so that far-away intervals keep
    their relative precision.
    """
    if b <= mu:
        return 0.5 * (math.exp(-(mu - b) / sigma) - math.exp(-(mu - a) / sigma))
    if a >= mu:
        return 0.5 * (math.exp(-(a - mu) / sigma) - math.exp(-(b - mu) / sigma))
    p = LaplaceParams(mu, sigma)
    return laplace_cdf(b, p) - laplace_cdf(a, p)


def _check_distances(*distances):
    for d in distances:
        if d is not None and d < 0:
            raise NegativeDistanceError(f'distance to a constraint must be >= 0, got {d!r}')


def mass_left(view, sigma):
    """L: mass of the constraints left of view.mu."""
    _check_sigma(sigma)
    total = 0.0
    for dl, dr in view.left_finite:
        _check_distances(dl, dr)
        total += 0.5 * (math.exp(-dr / sigma) - math.exp(-dl / sigma))
    if view.dr_infinite is not None:
        _check_distances(view.dr_infinite)
        total += 0.5 * math.exp(-view.dr_infinite / sigma)
    return total


def mass_right(view, sigma):
    """R: mass of the constraints right of view.mu."""
    _check_sigma(sigma)
    total = 0.0
    for dl, dr in view.right_finite:
        _check_distances(dl, dr)
        total += 0.5 * (math.exp(-dl / sigma) - math.exp(-dr / sigma))
    if view.dl_infinite is not None:
        _check_distances(view.dl_infinite)
        total += 0.5 * math.exp(-view.dl_infinite / sigma)
    return total


def normalization(view, sigma):
    """
    Removed masses and normalization factor at view.mu.

    Raises:
        DegenerateMassError: when numerically no mass survives truncation.
    """
    l = mass_left(view, sigma)
    r = mass_right(view, sigma)
    surviving = 1.0 - (l + r)
    if surviving <= DEGENERATE_MASS:
        raise DegenerateMassError(
            f'constraints remove all mass at mu={view.mu!r} (L={l!r}, R={r!r}, sigma={sigma!r})'
        )
    return MassBreakdown(l=l, r=r, n=1.0 / surviving)


def removed_mass_profile(config, sigma, mus):
    """
    L and R for many feasible locations at once.

    Args:
        config: ConstraintConfig
        sigma: scale shared by every location
        mus: array of feasible locations

    Returns:
        (L, R) as numpy arrays shaped like mus.
    """
    _check_sigma(sigma)
    mus = np.asarray(mus, dtype=float)
    left = np.zeros_like(mus)
    right = np.zeros_like(mus)

    for c in config.intervals:
        # Exponents are clipped to <= 0; the masked-out side may be positive
        on_left = mus >= c.right
        near = np.exp(np.minimum(-(mus - c.right) / sigma, 0.0))
        far = np.exp(np.minimum(-(mus - c.left) / sigma, 0.0))
        left += np.where(on_left, 0.5 * (near - far), 0.0)

        on_right = mus <= c.left
        near = np.exp(np.minimum(-(c.left - mus) / sigma, 0.0))
        far = np.exp(np.minimum(-(c.right - mus) / sigma, 0.0))
        right += np.where(on_right, 0.5 * (near - far), 0.0)

    return left, right

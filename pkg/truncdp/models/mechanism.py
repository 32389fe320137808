"""
The truncated and normalized Laplace mechanism for one true response.
"""
import math
from dataclasses import dataclass

import numpy as np

from truncdp.errors import DegenerateMassError, ValidationError
from truncdp.models.constraint import Interval, feasible_spans, location_view
from truncdp.services.laplace_core import LaplaceParams, interval_mass, laplace_pdf, normalization

# Smallest uniform deviate passed to the inverse CDF; 0 would map to -inf
MIN_DEVIATE = 2.0 ** -53


@dataclass(frozen=True)
class Segment:
    span: Interval
    cumulative_before: float
    mass: float


@dataclass(frozen=True)
class TruncatedLaplace:
    """
    n * Lap(x | mu, sigma) on the feasible spans of config, 0 inside constraints.

    Build it with TruncatedLaplace.create() or mechanism_service.build().
    """

    config: object
    mu: float
    sigma: float
    mass: object
    segments: tuple
    params: object = None

    @classmethod
    def create(cls, config, mu, sigma, params=None):
        view = location_view(config, mu)
        mass = normalization(view, sigma)

        segments = []
        cumulative = 0.0
        for span in feasible_spans(config):
            seg_mass = mass.n * interval_mass(span.left, span.right, view.mu, sigma)
            segments.append(Segment(span=span, cumulative_before=cumulative, mass=seg_mass))
            cumulative += seg_mass

        if cumulative <= 0.0:
            raise DegenerateMassError(f'no feasible mass left for mu={mu!r}, sigma={sigma!r}')

        return cls(config=config, mu=view.mu, sigma=float(sigma), mass=mass,
                   segments=tuple(segments), params=params)

    @property
    def n(self):
        return self.mass.n

    @property
    def laplace(self):
        """The untruncated Lap(mu, sigma)."""
        return LaplaceParams(self.mu, self.sigma)

    @property
    def support(self):
        """(infimum, supremum) of the feasible space."""
        return self.segments[0].span.left, self.segments[-1].span.right

    def pdf(self, x):
        if math.isnan(x) or math.isinf(x) or not self.config.is_feasible(x):
            return 0.0
        return float(self.n * laplace_pdf(x, self.laplace))

    def pdf_many(self, xs):
        xs = np.asarray(xs, dtype=float)
        dens = self.n * laplace_pdf(xs, self.laplace)
        inside = np.zeros(xs.shape, dtype=bool)
        for c in self.config.intervals:
            inside |= (xs > c.left) & (xs < c.right)
        return np.where(inside | ~np.isfinite(xs), 0.0, dens)

    def cdf(self, x):
        if math.isnan(x):
            raise ValidationError('cdf of NaN')
        if x == math.inf:
            return 1.0
        for seg in self.segments:
            if x < seg.span.left:
                return seg.cumulative_before
            if x <= seg.span.right:
                partial = self.n * interval_mass(seg.span.left, x, self.mu, self.sigma)
                return min(1.0, seg.cumulative_before + partial)
        return 1.0

    def quantile(self, p):
        """x with cdf(x) = p; p = 0 and p = 1 give the ends of the feasible support."""
        if math.isnan(p) or not 0.0 <= p <= 1.0:
            raise ValidationError(f'probability must lie in [0, 1], got {p!r}')
        if p == 0.0:
            return self.support[0]
        if p == 1.0:
            return self.support[1]
        return float(self.quantile_many(np.array([p]))[0])

    def quantile_many(self, ps):
        """Vectorized inverse CDF for probabilities strictly inside (0, 1)."""
        ps = np.asarray(ps, dtype=float)
        cum = np.array([s.cumulative_before for s in self.segments])
        lefts = np.array([s.span.left for s in self.segments])
        rights = np.array([s.span.right for s in self.segments])

        k = np.clip(np.searchsorted(cum, ps, side='right') - 1, 0, len(self.segments) - 1)
        a, b = lefts[k], rights[k]
        # Laplace mass to walk from the left end of the segment
        t = (ps - cum[k]) / self.n
        mu, sigma = self.mu, self.sigma

        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            starts_left = a < mu
            below_left = 0.5 * np.exp(-np.abs(mu - a) / sigma) + t
            survival = np.where(
                starts_left,
                1.0 - below_left,
                0.5 * np.exp(-np.abs(a - mu) / sigma) - t,
            )
            left_x = mu + sigma * np.log(2.0 * below_left)
            right_x = mu - sigma * np.log(2.0 * survival)
            x = np.where(starts_left & (below_left <= 0.5), left_x, right_x)

        x = np.where(np.isnan(x), b, x)
        return np.clip(x, a, b)

    def sample(self, u):
        """Inverse-transform sample from a uniform deviate u in [0, 1)."""
        if math.isnan(u) or not 0.0 <= u < 1.0:
            raise ValidationError(f'uniform deviate must lie in [0, 1), got {u!r}')
        return self.quantile(max(u, MIN_DEVIATE))

    def describe(self):
        return {
            'mu': self.mu,
            'sigma': self.sigma,
            'l': self.mass.l,
            'r': self.mass.r,
            'normalization': self.n,
            'segments': [
                {'span': s.span.to_json(), 'mass': s.mass} for s in self.segments
            ],
        }

    def __repr__(self):
        return f'<TruncatedLaplace mu={self.mu:g} sigma={self.sigma:.6g} n={self.n:.6g}>'

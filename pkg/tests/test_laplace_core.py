import math

import numpy as np
import pytest
from scipy import integrate

from truncdp.errors import DegenerateMassError, NegativeDistanceError, ValidationError
from truncdp.models.constraint import LocationView, feasible_spans, location_view, normalize_config
from truncdp.services.laplace_core import (
    LaplaceParams,
    interval_mass,
    laplace_cdf,
    laplace_pdf,
    mass_left,
    mass_right,
    normalization,
    removed_mass_profile,
)

LN2 = math.log(2.0)
LN4 = math.log(4.0)


class TestLaplace:

    @pytest.mark.parametrize('sigma', [1.0, 0.3, 7.0])
    def test_pdf_examples(self, sigma):
        p = LaplaceParams(mu=2.0, sigma=sigma)
        assert laplace_pdf(2.0, p) == pytest.approx(0.5 / sigma)
        assert laplace_pdf(2.0 + sigma * LN2, p) == pytest.approx(0.25 / sigma)
        assert laplace_pdf(2.0 - sigma * LN2, p) == pytest.approx(0.25 / sigma)

    def test_cdf_examples(self):
        p = LaplaceParams(mu=-1.0, sigma=2.0)
        assert laplace_cdf(-1.0, p) == 0.5
        assert laplace_cdf(-1.0 + 2.0 * LN2, p) == pytest.approx(0.75)
        assert laplace_cdf(-1.0 - 2.0 * LN2, p) == pytest.approx(0.25)

    @pytest.mark.parametrize('x', [-5.0, -0.3, 0.2, 4.0])
    def test_cdf_derivative_is_pdf(self, x):
        p = LaplaceParams(mu=0.0, sigma=1.3)
        h = 1e-6 * p.sigma
        derivative = (laplace_cdf(x + h, p) - laplace_cdf(x - h, p)) / (2 * h)
        assert derivative == pytest.approx(laplace_pdf(x, p), rel=1e-5)

    def test_invalid_sigma(self):
        with pytest.raises(ValidationError):
            LaplaceParams(mu=0.0, sigma=0.0)
        with pytest.raises(ValidationError):
            LaplaceParams(mu=0.0, sigma=-1.0)


class TestIntervalMass:

    @pytest.mark.parametrize('a, b', [(-3.0, -1.0), (-1.0, 2.0), (0.5, 4.0), (-math.inf, 0.2), (1.0, math.inf)])
    def test_matches_cdf_difference(self, a, b):
        p = LaplaceParams(mu=0.3, sigma=0.8)
        expected = (laplace_cdf(b, p) if math.isfinite(b) else 1.0) - (laplace_cdf(a, p) if math.isfinite(a) else 0.0)
        assert interval_mass(a, b, p.mu, p.sigma) == pytest.approx(expected, rel=1e-12)

    def test_whole_line(self):
        assert interval_mass(-math.inf, math.inf, 5.0, 2.0) == 1.0

    def test_far_interval_keeps_relative_precision(self):
        mass = interval_mass(100.0, 101.0, 0.0, 1.0)
        assert mass == pytest.approx(0.5 * (math.exp(-100.0) - math.exp(-101.0)), rel=1e-12)


class TestRemovedMass:
    sigma = 1.7

    def test_empty_view(self):
        view = LocationView(mu=0.0)
        assert mass_left(view, self.sigma) == 0.0
        assert mass_right(view, self.sigma) == 0.0

    def test_infinite_constraint_at_distance_zero(self):
        assert mass_left(LocationView(mu=0.0, dr_infinite=0.0), self.sigma) == 0.5
        assert mass_right(LocationView(mu=0.0, dl_infinite=0.0), self.sigma) == 0.5

    def test_finite_pairs(self):
        s = self.sigma
        left = LocationView(mu=0.0, left_finite=((s * LN4, s * LN2),))
        right = LocationView(mu=0.0, right_finite=((s * LN2, s * LN4),))
        assert mass_left(left, s) == pytest.approx(0.125)
        assert mass_right(right, s) == pytest.approx(0.125)

    def test_negative_distance(self):
        with pytest.raises(NegativeDistanceError):
            mass_left(LocationView(mu=0.0, dr_infinite=-1.0), self.sigma)
        with pytest.raises(NegativeDistanceError):
            mass_right(LocationView(mu=0.0, right_finite=((-1.0, 2.0),)), self.sigma)


class TestNormalization:

    def test_no_constraints(self):
        mass = normalization(LocationView(mu=0.0), 1.0)
        assert (mass.l, mass.r, mass.n) == (0.0, 0.0, 1.0)

    def test_boundary_of_infinite_constraint(self):
        mass = normalization(LocationView(mu=0.0, dr_infinite=0.0), 2.0)
        assert (mass.l, mass.r, mass.n) == (0.5, 0.0, 2.0)
        mass = normalization(LocationView(mu=0.0, dl_infinite=0.0), 2.0)
        assert (mass.l, mass.r, mass.n) == (0.0, 0.5, 2.0)

    def test_composition(self):
        s = 0.9
        view = LocationView(mu=0.0, left_finite=((s * LN4, s * LN2),), dl_infinite=s * LN2)
        mass = normalization(view, s)
        assert mass.l == pytest.approx(0.125)
        assert mass.r == pytest.approx(0.25)
        assert mass.n == pytest.approx(1.6)

    def test_degenerate(self):
        with pytest.raises(DegenerateMassError):
            normalization(LocationView(mu=0.0, dr_infinite=0.0, dl_infinite=0.0), 1.0)

    def test_leakage_decreases_with_distance(self, left_infinite):
        factors = [normalization(location_view(left_infinite, mu), 1.3).n for mu in np.linspace(0, 20, 41)]
        assert all(a > b for a, b in zip(factors, factors[1:]) if b > 1.0)
        assert factors[0] == 2.0

    @pytest.mark.parametrize('sigma', [0.4, 1.0, 2.5])
    def test_conservation(self, any_config, sigma):
        _, config, mu = any_config
        mass = normalization(location_view(config, mu), sigma)
        total = 0.0
        for span in feasible_spans(config):
            pieces = [(span.left, min(mu, span.right)), (max(mu, span.left), span.right)]
            for a, b in pieces:
                if a < b:
                    value, _ = integrate.quad(
                        lambda x: mass.n * math.exp(-abs(mu - x) / sigma) / (2 * sigma),
                        a, b, epsabs=1e-10, epsrel=1e-8,
                    )
                    total += value
        assert total == pytest.approx(1.0, abs=1e-6)


def test_profile_matches_scalar_masses(five_finite):
    sigma = 1.1
    mus = np.array([-3.0, 0.0, 1.0, 1.5, 2.5, 3.0, 6.0, 7.0, 8.2, 8.6, 12.0, 15.0])
    left, right = removed_mass_profile(five_finite, sigma, mus)
    for mu, l, r in zip(mus, left, right):
        view = location_view(five_finite, mu)
        assert l == pytest.approx(mass_left(view, sigma), rel=1e-12, abs=1e-300)
        assert r == pytest.approx(mass_right(view, sigma), rel=1e-12, abs=1e-300)


def test_profile_with_infinite_constraints(mixed):
    left, right = removed_mass_profile(mixed, 2.0, [0.0, 2.0, 3.0, 6.0])
    assert left[0] == 0.5
    assert right[-1] == 0.5
    assert np.all(np.isfinite(left)) and np.all(np.isfinite(right))

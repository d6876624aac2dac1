#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""
Test suite for the distribution of the ratio of two Gaussians
"""

import unittest
import numpy as np
from scipy import integrate
from collisionengine.exceptions import ParameterRangeError
from collisionengine.sampler.streams import make_generator
from collisionengine.statistics.fitting import ks_distance
from collisionengine.statistics.ratio_distribution import (
    RatioPdfParams,
    ratio_cdf,
    ratio_normalization,
    ratio_pdf,
    sample_ratio,
)

CAUCHY = RatioPdfParams(0.0, 1.0, 0.0, 1.0)


def random_params(rng):
    """Means in [-2, 2], standard deviations in [0.2, 2]"""
    means = rng.uniform(-2.0, 2.0, 2)
    stds = rng.uniform(0.2, 2.0, 2)
    return RatioPdfParams(means[0], stds[0], means[1], stds[1])


class RatioDistributionTestSuite(unittest.TestCase):
    """
    Test cases for the closed-form ratio density and distribution function
    """

    def setUp(self):
        """
        Set up TestSuite
        """
        self.rng = np.random.default_rng(99)

    def test_cauchy_reduction(self):
        """
        Zero means and unit variances give the standard Cauchy law
        """
        self.assertAlmostEqual(ratio_pdf(0.0, CAUCHY), 1.0 / np.pi, places=15)
        eta = np.linspace(-20.0, 20.0, 81)
        self.assertTrue(np.allclose(ratio_pdf(eta, CAUCHY), 1.0 / (np.pi * (1.0 + eta**2)), rtol=1e-13))
        self.assertTrue(np.allclose(ratio_cdf(eta, CAUCHY), 0.5 + np.arctan(eta) / np.pi, atol=1e-10))

    def test_scalar_and_array_inputs(self):
        """
        Scalars give floats, arrays keep their shape
        """
        self.assertTrue(isinstance(ratio_pdf(0.3, CAUCHY), float))
        self.assertTrue(isinstance(ratio_cdf(0.3, CAUCHY), float))
        self.assertTrue(ratio_pdf(np.zeros((2, 3)), CAUCHY).shape == (2, 3))

    def test_normalization(self):
        """
        The density integrates to one within 1e-6, 20 random parameter sets
        """
        for _ in range(20):
            params = random_params(self.rng)
            self.assertTrue(abs(ratio_normalization(params) - 1.0) <= 1e-6)

    def test_cdf_matches_integrated_density(self):
        """
        The Owen's T distribution function equals the integral of the density
        """
        for _ in range(5):
            params = random_params(self.rng)
            for eta in (-3.0, -0.4, 0.0, 0.7, 5.0):
                integral, _ = integrate.quad(
                    lambda theta: ratio_pdf(np.tan(theta), params) / np.cos(theta) ** 2,
                    -np.pi / 2,
                    np.arctan(eta),
                    limit=200,
                    epsabs=1e-12,
                )
                self.assertTrue(abs(ratio_cdf(eta, params) - integral) <= 1e-8)

    def test_cdf_is_monotone(self):
        """
        The distribution function rises from 0 to 1
        """
        params = RatioPdfParams(0.05, 0.02, 0.1, 0.03)
        eta = np.linspace(-50.0, 50.0, 2001)
        values = ratio_cdf(eta, params)
        self.assertTrue(np.all(np.diff(values) >= -1e-12))
        self.assertTrue(values[0] < 0.01 and values[-1] > 0.99)

    def test_monte_carlo_agreement(self):
        """
        KS distance below 0.01 against 10^5 Monte Carlo draws
        """
        for params in (RatioPdfParams(0.05, 0.02, 0.1, 0.03), RatioPdfParams(0.1, 0.4, 0.2, 0.3)):
            samples = sample_ratio(params, 100000, make_generator(2024))
            self.assertTrue(samples.size == 100000)
            distance = ks_distance(samples, lambda eta, params=params: ratio_cdf(eta, params))
            self.assertTrue(distance < 0.01)

    def test_inverse_square_tails(self):
        """
        eta^2 p(eta) approaches a constant on both sides
        """
        params = RatioPdfParams(0.3, 0.5, 0.8, 0.4)
        for sign in (1.0, -1.0):
            near, far = sign * 1e4, sign * 1e6
            ratio = (far**2 * ratio_pdf(far, params)) / (near**2 * ratio_pdf(near, params))
            self.assertTrue(abs(ratio - 1.0) < 1e-3)

    def test_shifted_bracket_is_not_normalized(self):
        """
        The 1 + erf bracket integrates away from one and logs a warning
        """
        params = RatioPdfParams(0.5, 0.5, 1.0, 0.5)
        with self.assertLogs("collisionengine.statistics.ratio_distribution", level="WARNING"):
            ratio_pdf(0.5, params, bracket="shifted")
        self.assertTrue(abs(ratio_normalization(params, bracket="shifted") - 1.0) > 1e-3)
        self.assertTrue(abs(ratio_normalization(params) - 1.0) <= 1e-6)
        self.assertRaises(ParameterRangeError, ratio_pdf, 0.0, params, "other")

    def test_invalid_inputs(self):
        """
        Nonpositive spreads and nonfinite efficiencies are rejected
        """
        self.assertRaises(ParameterRangeError, RatioPdfParams, 0.0, 0.0, 0.0, 1.0)
        self.assertRaises(ParameterRangeError, RatioPdfParams, np.nan, 1.0, 0.0, 1.0)
        self.assertRaises(ParameterRangeError, ratio_pdf, np.inf, CAUCHY)
        self.assertRaises(ParameterRangeError, ratio_cdf, [0.0, np.nan], CAUCHY)


if __name__ == "__main__":
    unittest.main()

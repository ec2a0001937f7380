# -*- coding: utf-8 -*-

# This code is part of mlcf.
#
# (C) Copyright the mlcf developers 2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
#
# Any modifications or derivative works of this code must retain this
# copyright notice, and modified files need to carry a notice indicating
# that they have been altered from the originals.

"""
Test the Monte Carlo and single-level control functional estimators
"""

import unittest

import numpy as np
from ddt import ddt, data, unpack

from mlcf.exceptions import ConfigurationError, EvaluationError
from mlcf.estimators import (SampleSplit, cf_residual_variance, cf_simplified,
                             cf_standard, level_kernel, mc_estimate, split_sample)
from mlcf.kernels import SqExpKernel, SteinKernel, gaussian_target, stein_cross
from test.utils import gaussian_points


@ddt
class TestMonteCarlo(unittest.TestCase):
    """Plain sample means."""

    @data(([3, 3, 3], 3.0), ([0, 1], 0.5))
    @unpack
    def test_mean(self, values, expected):
        """Arithmetic mean."""
        self.assertEqual(mc_estimate(values), expected)

    def test_empty(self):
        """Empty samples are rejected."""
        with self.assertRaises(ValueError):
            mc_estimate([])

    def test_gaussian_moment(self):
        """Second moment of the standard normal."""
        samples = gaussian_points(100000, 1, 3)[:, 0]
        self.assertAlmostEqual(mc_estimate(samples ** 2), 1.0, delta=0.02)


class TestSampleSplit(unittest.TestCase):
    """Fitting/evaluation splits."""

    def test_split_sizes(self):
        """The fitting set takes the ceiling of the fraction."""
        split = split_sample(np.arange(10.0).reshape(5, 2))
        self.assertEqual(split.num_fit, 3)
        self.assertEqual(split.num_points, 5)
        np.testing.assert_array_equal(split.points(), np.arange(10.0).reshape(5, 2))

    def test_full_fraction(self):
        """A fraction of one leaves the evaluation set empty."""
        split = split_sample(np.zeros((4, 1)), 1.0)
        self.assertEqual(split.x1.shape, (0, 1))

    def test_invalid(self):
        """Empty fitting sets, bad fractions and non-finite points are rejected."""
        with self.assertRaises(ConfigurationError):
            SampleSplit(np.zeros((0, 2)), np.zeros((3, 2)))
        with self.assertRaises(ConfigurationError):
            split_sample(np.zeros((4, 1)), 0.0)
        with self.assertRaises(ConfigurationError):
            SampleSplit([[np.nan]], [[0.0]])


class TestControlFunctionals(unittest.TestCase):
    """Standard and simplified control functionals."""

    def setUp(self):
        self.target = gaussian_target([0.0], [1.0])

    def _kernel(self, points):
        return level_kernel(self.target, points)

    def test_standard_constant(self):
        """Constants are reproduced exactly."""
        points = gaussian_points(30, 1, 4)
        split = split_sample(points)
        self.assertAlmostEqual(cf_standard(self._kernel(split.x0), lambda x: 4.2, split),
                               4.2, delta=1e-10)

    def test_standard_single_fit_point(self):
        """With one fitting point the weights vanish and the estimate is the mean on x1."""
        points = gaussian_points(6, 1, 5)
        split = SampleSplit(points[:1], points[1:])

        def func(x):
            return float(np.sin(x[0]) + x[0] ** 3)

        expected = np.mean([func(x) for x in points[1:]])
        self.assertAlmostEqual(cf_standard(self._kernel(points), func, split),
                               expected, places=12)

    def test_standard_hand_expansion(self):
        """Two fitting points against a direct evaluation of the formula."""
        points = gaussian_points(7, 1, 6)
        split = SampleSplit(points[:2], points[2:])
        kern = SteinKernel(SqExpKernel(0.9), self.target)

        def func(x):
            return float(np.exp(0.3 * x[0]))

        f0 = np.array([func(x) for x in split.x0])
        f1 = np.array([func(x) for x in split.x1])
        gram = stein_cross(kern, split.x0, split.x0)
        gram_inv = np.linalg.inv(gram + 1e-8 * np.mean(np.diag(gram)) * np.eye(2))
        ones = np.ones(2)
        beta = ones.dot(gram_inv).dot(f0) / ones.dot(gram_inv).dot(ones)
        expected = np.mean(f1 - stein_cross(kern, split.x1, split.x0)
                           .dot(gram_inv).dot(f0 - beta))
        self.assertAlmostEqual(cf_standard(kern, func, split), expected, places=8)

    def test_standard_empty_evaluation_set(self):
        """The standard estimator needs evaluation points."""
        split = split_sample(gaussian_points(4, 1, 0), 1.0)
        with self.assertRaises(ConfigurationError):
            cf_standard(self._kernel(split.x0), lambda x: x[0], split)

    def test_standard_unbiased(self):
        """Replication mean of the standard estimator against quadrature."""
        nodes, weights = np.polynomial.hermite_e.hermegauss(60)
        truth = np.sum(weights * (nodes + np.sin(nodes))) / np.sqrt(2 * np.pi)

        def func(x):
            return float(x[0] + np.sin(x[0]))

        estimates = []
        for seed in range(500):
            split = split_sample(gaussian_points(100, 1, seed))
            estimates.append(cf_standard(self._kernel(split.x0), func, split))
        estimates = np.array(estimates)
        self.assertLess(abs(estimates.mean() - truth),
                        3 * estimates.std(ddof=1) / np.sqrt(estimates.size))

    def test_simplified_constant(self):
        """Constants are reproduced exactly on any point set."""
        for seed in range(5):
            points = gaussian_points(25, 1, seed)
            self.assertAlmostEqual(cf_simplified(self._kernel(points), lambda x: 5.0, points),
                                   5.0, delta=1e-10)

    def test_simplified_single_point(self):
        """A single point returns the integrand at that point."""
        self.assertAlmostEqual(cf_simplified(self._kernel([[0.4]]), lambda x: x[0] ** 2,
                                             [[0.4]]), 0.16, places=14)

    def test_non_finite_integrand(self):
        """A non-finite integrand value names the offending point."""
        points = np.array([[1.0], [-1.0]])
        with self.assertRaises(EvaluationError):
            cf_simplified(self._kernel(points), lambda x: np.log(x[0]), points)

    def test_residual_variance_below_mc(self):
        """The control functional residuals vary less than the integrand."""
        points = gaussian_points(80, 1, 9)
        split = split_sample(points)

        def func(x):
            return float(x[0] ** 2)

        residual = cf_residual_variance(self._kernel(split.x0), func, split)
        self.assertLess(residual, np.var(split.x1[:, 0] ** 2, ddof=1))


if __name__ == '__main__':
    unittest.main()

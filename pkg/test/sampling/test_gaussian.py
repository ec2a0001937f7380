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
Test streams, independent and Latin hypercube Gaussian sampling
"""

import unittest

import mpmath
import numpy as np

from mlcf.exceptions import ConfigurationError
from mlcf.sampling import (GaussianSpec, SeededStream, lhs_unit, normal_quantile,
                           sample_iid, sample_lhs)


class TestStreams(unittest.TestCase):
    """Seeded streams."""

    def test_reproducible(self):
        """Equal seed and key give equal draws, different keys differ."""
        first = SeededStream(5, (1, 2)).generator().standard_normal(4)
        again = SeededStream(5, (1, 2)).generator().standard_normal(4)
        other = SeededStream(5, (1, 3)).generator().standard_normal(4)
        np.testing.assert_array_equal(first, again)
        self.assertFalse(np.allclose(first, other))

    def test_child(self):
        """Child keys extend the parent key."""
        self.assertEqual(SeededStream(1, 2).child(3, 4), SeededStream(1, (2, 3, 4)))

    def test_negative(self):
        """Negative seeds are rejected."""
        with self.assertRaises(ValueError):
            SeededStream(-1)


class TestGaussianSampling(unittest.TestCase):
    """Independent and stratified Gaussian draws."""

    def test_spec_validation(self):
        """Standard deviations must be positive."""
        with self.assertRaises(ConfigurationError):
            GaussianSpec([0.0, 0.0], [1.0, 0.0])

    def test_single_point(self):
        """One draw gives one finite point."""
        points = sample_iid(GaussianSpec([0.0, 0.0], 1.0), 1, SeededStream(3))
        self.assertEqual(points.shape, (1, 2))
        self.assertTrue(np.all(np.isfinite(points)))

    def test_iid_moments(self):
        """Empirical moments of a large sample."""
        points = sample_iid(GaussianSpec([0.0], [1.0]), 100000, SeededStream(8))
        self.assertLess(abs(points.mean()), 0.02)
        self.assertLess(abs(points.std() - 1.0), 0.02)

    def test_iid_deterministic(self):
        """The same stream gives the same draws."""
        spec = GaussianSpec([1.0, -1.0], [0.5, 2.0])
        np.testing.assert_array_equal(sample_iid(spec, 10, SeededStream(4, 7)),
                                      sample_iid(spec, 10, SeededStream(4, 7)))

    def test_lhs_strata(self):
        """Each coordinate has one point per stratum."""
        unit = lhs_unit(4, 1, SeededStream(2))
        np.testing.assert_array_equal(np.floor(np.sort(unit[:, 0]) * 4), [0, 1, 2, 3])
        unit = lhs_unit(50, 3, SeededStream(9))
        for col in range(3):
            counts = np.bincount(np.floor(unit[:, col] * 50).astype(int), minlength=50)
            np.testing.assert_array_equal(counts, np.ones(50))

    def test_lhs_variance_reduction(self):
        """The mean of a Latin hypercube sample varies less than an independent one."""
        spec = GaussianSpec([0.0, 0.0], [1.0, 1.0])
        lhs_means = [sample_lhs(spec, 1000, SeededStream(seed))[:, 0].mean()
                     for seed in range(200)]
        iid_means = [sample_iid(spec, 1000, SeededStream(seed))[:, 0].mean()
                     for seed in range(200)]
        self.assertLess(np.var(lhs_means), np.var(iid_means))

    def test_quantile_accuracy(self):
        """The normal quantile agrees with a high precision evaluation."""
        mpmath.mp.dps = 40
        grid = np.concatenate([[1e-12, 1e-9, 1e-6, 1e-3], np.linspace(0.01, 0.99, 99),
                               [1 - 1e-3, 1 - 1e-6, 1 - 1e-9, 1 - 1e-12]])
        for u in grid:
            exact = mpmath.sqrt(2) * mpmath.erfinv(2 * mpmath.mpf(float(u)) - 1)
            self.assertLess(abs(normal_quantile(u) - float(exact)), 1e-9)


if __name__ == '__main__':
    unittest.main()

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
Test the benchmark level hierarchies
"""

import pickle
import unittest

import numpy as np
from ddt import ddt, data

from mlcf.exceptions import ConfigurationError
from mlcf.models import (BVP_COSTS, BVP_STEPS, LV_COSTS, bvp_input_spec,
                         make_bvp_hierarchy, make_lv_hierarchy,
                         make_synthetic_hierarchy, measure_costs)
from mlcf.sampling import SeededStream, sample_iid


@ddt
class TestHierarchies(unittest.TestCase):
    """Construction, increments and costs."""

    @data((1.0 / 8, 1.0 / 8), (1.0 / 8, 1.0 / 4), (), (0.5, -0.1))
    def test_invalid_steps(self, steps):
        """Steps must be positive and strictly decreasing."""
        with self.assertRaises(ConfigurationError):
            make_bvp_hierarchy(steps, costs=[1.0] * max(len(steps), 1))

    def test_cost_length(self):
        """One cost per level."""
        with self.assertRaises(ConfigurationError):
            make_bvp_hierarchy(BVP_STEPS, costs=[1.0, 2.0])

    def test_presets(self):
        """Preset hierarchies carry the shipped costs."""
        bvp = make_bvp_hierarchy(costs=BVP_COSTS)
        self.assertEqual(bvp.num_levels, 3)
        self.assertEqual(bvp.costs, list(BVP_COSTS))
        lv = make_lv_hierarchy(costs=LV_COSTS)
        self.assertEqual(lv.costs, list(LV_COSTS))

    def test_bvp_increments_shrink(self):
        """Finer increments are smaller for most inputs."""
        hierarchy = make_bvp_hierarchy(costs=BVP_COSTS)
        points = sample_iid(bvp_input_spec(), 100, SeededStream(4, 0))
        first = np.abs(hierarchy.increment(1, points))
        second = np.abs(hierarchy.increment(2, points))
        self.assertGreaterEqual(np.mean(second < first), 0.9)

    def test_lv_levels_converge(self):
        """Lotka-Volterra levels approach each other away from equilibrium."""
        hierarchy = make_lv_hierarchy(costs=LV_COSTS)
        x = np.log([[0.55, 0.028, 0.024, 0.8, 33.0, 6.0, 0.25, 0.25]])
        first = abs(hierarchy.increment(1, x)[0])
        second = abs(hierarchy.increment(2, x)[0])
        self.assertLess(second, first)

    def test_measured_costs(self):
        """Measured costs are positive and nondecreasing."""
        hierarchy = make_bvp_hierarchy(costs=BVP_COSTS)
        costs = measure_costs(hierarchy, [[0.0, 1.0], [0.1, -0.5]], repeats=5)
        self.assertEqual(len(costs), 3)
        self.assertTrue(all(cost > 0 for cost in costs))
        self.assertEqual(costs, sorted(costs))

    def test_measured_when_missing(self):
        """Without costs the hierarchy times its own levels."""
        hierarchy = make_bvp_hierarchy((1.0 / 4, 1.0 / 8))
        self.assertEqual(hierarchy.num_levels, 2)
        self.assertLessEqual(hierarchy.costs[0], hierarchy.costs[1])

    def test_picklable(self):
        """Hierarchies survive pickling for worker processes."""
        hierarchy = make_bvp_hierarchy(costs=BVP_COSTS)
        clone = pickle.loads(pickle.dumps(hierarchy))
        points = [[0.1, 0.7], [-0.2, 1.3]]
        np.testing.assert_array_equal(clone.evaluate(2, points),
                                      hierarchy.evaluate(2, points))

    def test_synthetic(self):
        """The synthetic hierarchy scales the squared norm."""
        hierarchy = make_synthetic_hierarchy(dim=3, num_levels=3, ratio=0.5)
        x = np.array([[1.0, 2.0, 2.0]])
        self.assertAlmostEqual(hierarchy.evaluate(2, x)[0], 9.0)
        self.assertAlmostEqual(hierarchy.evaluate(0, x)[0], 2.25)
        self.assertAlmostEqual(hierarchy.increment(1, x)[0], 2.25)
        self.assertEqual(hierarchy.costs, [1e-4, 4e-4, 16e-4])
        with self.assertRaises(ConfigurationError):
            make_synthetic_hierarchy(dim=0)


if __name__ == '__main__':
    unittest.main()

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
Test budget allocation
"""

import unittest

import numpy as np
from ddt import ddt, data, unpack

from mlcf.exceptions import BudgetError, ConfigurationError
from mlcf.harness import Allocation, allocate_budget
from mlcf.harness.allocation import check_budget_honesty, mlmc_optimal_sizes
from mlcf.models import BVP_COSTS, LV_COSTS


@ddt
class TestAllocation(unittest.TestCase):
    """Published and optimal allocations."""

    @unpack
    @data((0.30, [70, 10, 2], 15), (0.91, [209, 31, 5], 45), (1.52, [349, 52, 6], 75))
    def test_bvp_presets(self, budget, sizes, cf_size):
        """Boundary-value budgets give the published sizes."""
        allocation = allocate_budget(BVP_COSTS, budget, 'paper-preset', 'bvp')
        self.assertEqual(allocation.level_sizes, sizes)
        self.assertEqual(allocation.cf_size, cf_size)
        self.assertTrue(check_budget_honesty(allocation, BVP_COSTS, budget))

    @unpack
    @data((0.26, [207, 23, 2], 20), (0.51, [413, 47, 4], 40), (0.77, [620, 70, 6], 60))
    def test_lv_presets(self, budget, sizes, single):
        """Lotka-Volterra budgets give the published sizes."""
        allocation = allocate_budget(LV_COSTS, budget, 'paper-preset', 'lotka-volterra')
        self.assertEqual(allocation, Allocation(sizes, single, single))
        self.assertTrue(check_budget_honesty(allocation, LV_COSTS, budget))

    def test_budget_too_small(self):
        """A budget below one top-level evaluation is an error."""
        with self.assertRaises(BudgetError):
            allocate_budget(BVP_COSTS, 0.005, 'paper-preset', 'bvp')
        with self.assertRaises(BudgetError):
            allocate_budget([1.0, 4.0], 3.0, 'mlmc-optimal', variances=[1.0, 1.0])

    def test_no_preset(self):
        """Budgets without a published row are rejected by the preset policy."""
        with self.assertRaises(ConfigurationError):
            allocate_budget(BVP_COSTS, 0.5, 'paper-preset', 'bvp')
        with self.assertRaises(ConfigurationError):
            allocate_budget([1e-4, 4e-4], 0.30, 'paper-preset', 'synthetic')

    def test_optimal_ratios(self):
        """Equal variances and costs 1, 4, 16 give sizes in ratio 4:2:1."""
        sizes = mlmc_optimal_sizes([1.0, 4.0, 16.0], [1.0, 1.0, 1.0], 28.0)
        np.testing.assert_allclose(sizes, [4.0, 2.0, 1.0])
        small = mlmc_optimal_sizes([1.0, 4.0, 16.0], [1.0, 1.0, 1.0], 7.0)
        np.testing.assert_allclose(small / small[-1], [4.0, 2.0, 1.0])

    def test_optimal_allocation(self):
        """Optimal sizes spend the budget."""
        allocation = allocate_budget([1.0, 4.0, 16.0], 1400.0, 'mlmc-optimal',
                                     variances=[1.0, 1.0, 1.0])
        self.assertEqual(allocation.level_sizes, [200, 100, 50])
        self.assertEqual(allocation.cf_size, 87)
        self.assertAlmostEqual(allocation.nominal_cost([1.0, 4.0, 16.0]), 1400.0)

    def test_optimal_floor(self):
        """Every level gets at least two points."""
        allocation = allocate_budget([1.0, 4.0, 16.0], 100.0, 'mlmc-optimal',
                                     variances=[1.0, 1e-6, 1e-8])
        self.assertEqual(allocation.level_sizes, [99, 2, 2])

    def test_optimal_needs_variances(self):
        """The optimal policy needs one pilot variance per level."""
        with self.assertRaises(ConfigurationError):
            allocate_budget([1.0, 4.0], 100.0, 'mlmc-optimal')
        with self.assertRaises(ConfigurationError):
            allocate_budget([1.0, 4.0], 100.0, 'mlmc-optimal', variances=[1.0])

    def test_invalid_costs(self):
        """Costs must be positive."""
        with self.assertRaises(ConfigurationError):
            allocate_budget([0.0, 1.0], 10.0, 'mlmc-optimal', variances=[1.0, 1.0])

    def test_dishonest_budget(self):
        """Overspending allocations are flagged."""
        with self.assertLogs('mlcf.harness.allocation', 'WARNING'):
            self.assertFalse(check_budget_honesty(Allocation([100, 10], 1, 1), [1.0, 1.0],
                                                  50.0))


if __name__ == '__main__':
    unittest.main()

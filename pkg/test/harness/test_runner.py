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
Test replicated experiment runs
"""

import unittest

import numpy as np

from mlcf.harness import (ExperimentConfig, build_problem, resolve_allocation,
                          run_experiment, run_replication, sign_test)
from mlcf.harness.runner import ReplicationDesigns

METHODS = [{'estimator': 'mc'}, {'estimator': 'cf'}, {'estimator': 'mlmc'},
           {'estimator': 'mlcf-standard'}, {'estimator': 'mlcf-simplified'},
           {'estimator': 'mlcf-simplified', 'sampler': 'sobol'},
           {'estimator': 'mlcf-simplified', 'sampler': 'lhs'}]


def _config(**changes):
    config = {'problem': 'synthetic', 'methods': METHODS, 'level_sizes': [24, 8],
              'single_level_size': 12, 'replications': 3, 'seed': 5}
    config.update(changes)
    return ExperimentConfig(config)


class TestRunExperiment(unittest.TestCase):
    """Replication loops and their results."""

    def test_smoke(self):
        """Plain Monte Carlo of x^2 under N(0, 1) with ten points."""
        config = _config(methods=[{'estimator': 'mc'}], level_sizes=[10], mc_size=10,
                         replications=1, synthetic={'dim': 1, 'num_levels': 1})
        result = run_experiment(config)
        self.assertEqual(len(result.records), 1)
        record = result.records[0]
        self.assertTrue(np.isfinite(record.estimate))
        self.assertEqual(record.abs_error, abs(record.estimate - 1.0))
        self.assertAlmostEqual(record.cost_seconds, 10 * 1e-4)

    def test_deterministic(self):
        """The same seed gives bit-identical estimates."""
        first = run_experiment(_config())
        second = run_experiment(_config())
        self.assertEqual([rec.estimate for rec in first.records],
                         [rec.estimate for rec in second.records])
        other = run_experiment(_config(seed=6))
        self.assertNotEqual([rec.estimate for rec in first.records],
                            [rec.estimate for rec in other.records])

    def test_replication_independent_of_order(self):
        """A replication run alone matches the same replication in a full run."""
        config = _config()
        result = run_experiment(config)
        problem = build_problem(config)
        alone = run_replication(problem, config, resolve_allocation(config, problem), 2, 2.0)
        self.assertEqual([rec.estimate for rec in alone],
                         [rec.estimate for rec in result.records if rec.replication == 2])

    def test_records(self):
        """One record per replication and method, all successful here."""
        result = run_experiment(_config())
        self.assertEqual(len(result.records), 3 * len(METHODS))
        self.assertEqual(result.failures(), 0)
        self.assertEqual([rec.replication for rec in result.records[:len(METHODS)]],
                         [0] * len(METHODS))
        self.assertEqual(result.methods[0], 'mc(iid)')
        for method in result.methods:
            self.assertEqual(result.errors(method).size, 3)
            self.assertTrue(np.all(result.errors(method) >= 0))
        summary = result.summary()['mlcf-simplified(iid)']
        self.assertLessEqual(summary['q1'], summary['median'])
        self.assertLessEqual(summary['median'], summary['q3'])
        self.assertEqual(summary['failure_rate'], 0.0)
        self.assertGreater(result.total_cost, 0.0)

    def test_paired_points(self):
        """Methods sharing a sampler share points."""
        config = _config(methods=[{'estimator': 'mlmc'}, {'estimator': 'mlcf-simplified'}],
                         cf_levels=[])
        result = run_experiment(config)
        np.testing.assert_array_equal(result.estimates('mlmc(iid)'),
                                      result.estimates('mlcf-simplified(iid)'))

    def test_sobol_blocks(self):
        """Sobol points of different replications and levels are disjoint."""
        config = _config()
        problem = build_problem(config)
        allocation = resolve_allocation(config, problem)
        first = ReplicationDesigns(problem, config, allocation, 0)
        second = ReplicationDesigns(problem, config, allocation, 1)
        points = np.vstack([first.design('sobol', 0, 24).points,
                            first.design('sobol', 1, 8).points,
                            second.design('sobol', 0, 24).points])
        self.assertEqual(np.unique(points, axis=0).shape[0], 56)

    def test_failures_recorded(self):
        """Failing methods are counted, not fatal."""
        config = _config(methods=[{'estimator': 'mlcf-standard'}, {'estimator': 'mlmc'}],
                         level_sizes=[1], synthetic={'dim': 1, 'num_levels': 1})
        with self.assertLogs('mlcf.harness.runner', 'WARNING'):
            result = run_experiment(config)
        self.assertEqual(result.failures(), 3)
        self.assertEqual(result.failures('mlmc(iid)'), 0)
        self.assertEqual(result.errors('mlcf-standard(iid)').size, 0)
        summary = result.summary()
        self.assertEqual(summary['mlcf-standard(iid)']['failure_rate'], 1.0)
        self.assertIsNone(summary['mlcf-standard(iid)']['median'])

    def test_allocation_from_sizes(self):
        """Explicit sizes give the single-level estimators the same nominal cost."""
        config = _config(single_level_size=None)
        problem = build_problem(config)
        allocation = resolve_allocation(config, problem)
        # 24 * 1e-4 + 8 * 4e-4 = 14 top-level evaluations
        self.assertEqual(allocation.cf_size, 14)
        self.assertEqual(allocation.mc_size, 14)

    def test_optimal_allocation(self):
        """The optimal policy runs a pilot and respects the floor."""
        config = _config(level_sizes=None, budget=0.01, allocation='mlmc-optimal')
        allocation = resolve_allocation(config, build_problem(config))
        self.assertEqual(len(allocation.level_sizes), 2)
        self.assertTrue(all(size >= 2 for size in allocation.level_sizes))

    def test_mcmc_points(self):
        """Langevin designs feed the multilevel estimators."""
        config = _config(methods=[{'estimator': 'mlmc', 'sampler': 'mcmc'},
                                  {'estimator': 'mlcf-simplified', 'sampler': 'mcmc'}])
        result = run_experiment(config)
        self.assertEqual(result.failures(), 0)
        self.assertTrue(np.all(np.isfinite(result.estimates('mlcf-simplified(mcmc)'))))


class TestSignTest(unittest.TestCase):
    """One-sided sign test on paired errors."""

    def test_all_wins(self):
        """Ten wins out of ten."""
        self.assertAlmostEqual(sign_test(np.zeros(10), np.ones(10)), 0.5 ** 10)

    def test_all_losses(self):
        """Ten losses give p = 1."""
        self.assertAlmostEqual(sign_test(np.ones(10), np.zeros(10)), 1.0)

    def test_ties(self):
        """Ties are dropped."""
        self.assertEqual(sign_test([1.0, 2.0], [1.0, 2.0]), 1.0)
        self.assertAlmostEqual(sign_test([0.0, 1.0, 1.0], [1.0, 1.0, 1.0]), 0.5)

    def test_lengths(self):
        """Errors must be paired."""
        with self.assertRaises(ValueError):
            sign_test([1.0], [1.0, 2.0])


if __name__ == '__main__':
    unittest.main()

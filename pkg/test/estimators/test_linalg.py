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
Test the regularized gram solves and the fill distance
"""

import unittest

import numpy as np

from mlcf.exceptions import DimensionMismatchError, SingularGramError
from mlcf.estimators import fill_distance, gram_condition, solve_regularized


class TestSolveRegularized(unittest.TestCase):
    """Cholesky solves with jitter escalation."""

    def test_identity(self):
        """Identity gram returns the right hand side."""
        solution, jitter = solve_regularized(np.eye(3), [1.0, 0.0, 0.0], 0.0)
        np.testing.assert_allclose(solution, [1.0, 0.0, 0.0])
        self.assertEqual(jitter, 0.0)

    def test_diagonal(self):
        """Diagonal gram solve."""
        solution, _ = solve_regularized(np.diag([2.0, 2.0]), [2.0, 4.0], 0.0)
        np.testing.assert_allclose(solution, [1.0, 2.0])

    def test_random_psd_residual(self):
        """Residual of the regularized system is small on rank-deficient grams."""
        rng = np.random.default_rng(7)
        for _ in range(10):
            factor = rng.standard_normal((10, 6))
            gram = factor.dot(factor.T)
            rhs = rng.standard_normal((10, 2))
            solution, jitter = solve_regularized(gram, rhs)
            residual = (gram + jitter * np.eye(10)).dot(solution) - rhs
            self.assertLess(np.linalg.norm(residual), 1e-8 * np.linalg.norm(rhs))

    def test_full_rank_keeps_jitter(self):
        """Well conditioned grams are solved at the requested jitter."""
        rng = np.random.default_rng(8)
        factor = rng.standard_normal((10, 20))
        gram = factor.dot(factor.T)
        rhs = rng.standard_normal(10)
        solution, jitter = solve_regularized(gram, rhs)
        self.assertEqual(jitter, 1e-8 * np.mean(np.diag(gram)))
        np.testing.assert_allclose(gram.dot(solution) + jitter * solution, rhs, atol=1e-9)

    def test_escalation_from_zero(self):
        """A singular gram with zero jitter escalates from 1e-12 of the diagonal."""
        with self.assertLogs('mlcf.estimators.linalg', level='WARNING'):
            _, jitter = solve_regularized(np.ones((3, 3)), np.ones(3), 0.0)
        self.assertAlmostEqual(jitter, 1e-12)

    def test_indefinite_fails(self):
        """An indefinite matrix fails after four escalations."""
        with self.assertRaises(SingularGramError) as context:
            solve_regularized(np.diag([3.0, -1.0]), np.ones(2))
        self.assertAlmostEqual(context.exception.jitter, 1e-4)

    def test_shape_errors(self):
        """Non-square grams and mismatched right hand sides are rejected."""
        with self.assertRaises(ValueError):
            solve_regularized(np.ones((2, 3)), np.ones(2))
        with self.assertRaises(ValueError):
            solve_regularized(np.eye(2), np.ones(3))

    def test_condition(self):
        """Condition number of the regularized gram."""
        self.assertAlmostEqual(gram_condition(np.diag([1.0, 4.0])), 4.0)
        self.assertAlmostEqual(gram_condition(np.diag([0.0, 4.0]), 1.0), 5.0)


class TestFillDistance(unittest.TestCase):
    """Nearest neighbour fill distance."""

    def test_same_sets(self):
        """Fitting set equal to the domain sample."""
        points = np.random.default_rng(1).standard_normal((15, 2))
        self.assertEqual(fill_distance(points, points), 0.0)

    def test_hand_computed(self):
        """One fitting point in one dimension."""
        self.assertAlmostEqual(fill_distance([[0.0]], [[0.0], [1.0], [2.0]]), 2.0)

    def test_grid_bound(self):
        """A grid of step s covers its box within s sqrt(d) / 2."""
        step = 0.25
        axis = np.arange(0.0, 1.0 + 1e-12, step)
        grid = np.array([[a, b] for a in axis for b in axis])
        domain_points = np.random.default_rng(2).uniform(0, 1, size=(2000, 2))
        self.assertLessEqual(fill_distance(grid, domain_points), step * np.sqrt(2) / 2 + 1e-12)

    def test_dimension_mismatch(self):
        """Point sets of different dimension are rejected."""
        with self.assertRaises(DimensionMismatchError):
            fill_distance([[0.0, 1.0]], [[0.0]])


if __name__ == '__main__':
    unittest.main()

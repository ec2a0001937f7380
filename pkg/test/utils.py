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

"""Functions of general purpose utility for the mlcf tests."""
import os
import unittest

import numpy as np


def slow_test(func):
    """Skip a test unless MLCF_SLOW_TESTS is set in the environment."""
    enabled = os.environ.get('MLCF_SLOW_TESTS', '') not in ('', '0')
    return unittest.skipUnless(enabled, 'set MLCF_SLOW_TESTS=1 to run')(func)


def gaussian_points(num_points: int, dim: int, seed: int = 0) -> np.ndarray:
    """Standard normal points of shape (num_points, dim).

    Args:
        num_points: number of points
        dim: dimension
        seed: seed of the numpy generator

    Returns:
        np.ndarray: the points
    """
    return np.random.default_rng(seed).standard_normal((num_points, dim))


def loglog_slope(xs, ys) -> float:
    """Least squares slope of log(ys) against log(xs)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])

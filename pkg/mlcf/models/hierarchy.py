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
Level hierarchies of the benchmark problems.
"""

import functools
import logging
import time
from typing import List, Optional, Sequence

import numpy as np

from ..estimators.multilevel import LevelHierarchy
from ..exceptions import ConfigurationError
from ..kernels.base import as_points
from .bvp import bvp_integrand
from .lotka_volterra import DEFAULT_PRIOR_MEAN, lv_integrand

logger = logging.getLogger(__name__)

# grid steps and seconds per evaluation of the shipped presets
BVP_STEPS = (1.0 / 8, 1.0 / 24, 1.0 / 72)
BVP_COSTS = (1.22e-3, 3.57e-3, 11.89e-3)
LV_STEPS = (0.5, 0.1, 0.02)
LV_COSTS = (6.88e-4, 34.41e-4, 165.18e-4)


def _check_steps(steps: Sequence[float]) -> List[float]:
    steps = [float(step) for step in steps]
    if not steps:
        raise ConfigurationError('A hierarchy needs at least one step')
    if any(not step > 0 for step in steps):
        raise ConfigurationError('Steps must be positive, got', steps)
    if any(fine >= coarse for coarse, fine in zip(steps, steps[1:])):
        raise ConfigurationError('Steps must be strictly decreasing, got', steps)
    return steps


def _squared_norm(x, scale):
    return scale * float(np.dot(x, x))


def measure_costs(hierarchy: LevelHierarchy, points, repeats: int = 50) -> List[float]:
    """
    Time the integrands of each level.

    Every level is evaluated ``repeats`` times, cycling through ``points``.
    The measured vector is made nondecreasing by a running maximum.

    Returns:
        list: seconds per evaluation of each level
    """
    points = as_points(points)
    costs = []
    for level in range(hierarchy.num_levels):
        func = hierarchy.integrand(level)
        func(points[0])
        start = time.perf_counter()
        for i in range(repeats):
            func(points[i % points.shape[0]])
        costs.append(max((time.perf_counter() - start) / repeats, 1e-9))
    repaired = list(np.maximum.accumulate(costs))
    if repaired != costs:
        logger.info('Measured costs %s repaired to nondecreasing %s', costs, repaired)
    return [float(cost) for cost in repaired]


def _finish(name, integrands, costs, calibration_points):
    if costs is None:
        unit_cost = LevelHierarchy(integrands, [1.0] * len(integrands), name)
        costs = measure_costs(unit_cost, calibration_points)
    elif len(costs) != len(integrands):
        raise ConfigurationError('Got', len(costs), 'costs for', len(integrands), 'levels')
    return LevelHierarchy(integrands, costs, name)


def make_bvp_hierarchy(steps: Sequence[float] = BVP_STEPS,
                       costs: Optional[Sequence[float]] = None) -> LevelHierarchy:
    """
    Boundary-value hierarchy with grid step ``steps[l]`` at level ``l``.

    Costs are measured at ``x = (0, 1)`` unless given.
    """
    steps = _check_steps(steps)
    integrands = [functools.partial(_bvp_level, step=step) for step in steps]
    return _finish('bvp', integrands, costs, [[0.0, 1.0]])


def _bvp_level(x, step):
    return bvp_integrand(x, step)


def _lv_level(x, step, horizon, rule):
    return lv_integrand(x, step, horizon, rule)


def make_lv_hierarchy(steps: Sequence[float] = LV_STEPS,
                      costs: Optional[Sequence[float]] = None, horizon: float = 20.0,
                      rule: str = 'riemann',
                      calibration_point: Optional[Sequence[float]] = None) -> LevelHierarchy:
    """
    Lotka-Volterra hierarchy with RK4 step ``steps[l]`` at level ``l``.

    Costs are measured at ``calibration_point`` (the prior mean by default)
    unless given.
    """
    steps = _check_steps(steps)
    integrands = [functools.partial(_lv_level, step=step, horizon=horizon, rule=rule)
                  for step in steps]
    if calibration_point is None:
        calibration_point = DEFAULT_PRIOR_MEAN
    return _finish('lotka-volterra', integrands, costs, [calibration_point])


def make_synthetic_hierarchy(dim: int = 2, num_levels: int = 2, ratio: float = 0.9,
                             costs: Optional[Sequence[float]] = None) -> LevelHierarchy:
    """
    Hierarchy ``f_l(x) = ratio^(L - l) |x|^2``.

    Under a standard normal input the finest level integrates to ``dim``.
    Costs default to ``4^l * 1e-4`` seconds.
    """
    if int(dim) < 1 or int(num_levels) < 1:
        raise ConfigurationError('Synthetic hierarchy needs positive dim and levels')
    top = int(num_levels) - 1
    integrands = [functools.partial(_squared_norm, scale=ratio ** (top - level))
                  for level in range(int(num_levels))]
    if costs is None:
        costs = [1e-4 * 4 ** level for level in range(int(num_levels))]
    return LevelHierarchy(integrands, costs, 'synthetic')

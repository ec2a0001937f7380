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
Multilevel Monte Carlo and multilevel control functional estimators.

All estimators here sum level contributions built from the increments
``f_l - f_{l-1}`` with ``f_{-1} = 0``. Levels not listed in ``cf_levels``
fall back to the plain mean of the increment.
"""

import logging
import math
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

from ..exceptions import ConfigurationError
from ..kernels.base import as_points
from ..kernels.stein import SteinKernel
from .control_functionals import (DEFAULT_JITTER, SampleSplit, cf_simplified_values,
                                  cf_standard_values, evaluate)

logger = logging.getLogger(__name__)


class LevelHierarchy:
    """
    Integrands of increasing fidelity and their costs per evaluation.

    The last integrand is the target fidelity.
    """

    def __init__(self, integrands: Sequence[Callable], costs: Sequence[float],
                 name: str = ''):
        """
        Args:
            integrands: functions ``f_0, ..., f_L`` of a point
            costs: seconds per evaluation of each level
            name: label used in logs and reports

        Raises:
            ConfigurationError: if the lengths differ, a cost is not
                positive or the costs decrease
        """
        integrands = list(integrands)
        costs = [float(c) for c in costs]
        if not integrands:
            raise ConfigurationError('A hierarchy needs at least one level')
        if len(integrands) != len(costs):
            raise ConfigurationError('Hierarchy has', len(integrands), 'integrands and',
                                     len(costs), 'costs')
        if any(not c > 0 for c in costs):
            raise ConfigurationError('Level costs must be positive, got', costs)
        if any(later < earlier for earlier, later in zip(costs, costs[1:])):
            raise ConfigurationError('Level costs must be nondecreasing, got', costs)
        self._integrands = integrands
        self._costs = costs
        self.name = name

    @property
    def num_levels(self) -> int:
        """Return ``L + 1``."""
        return len(self._integrands)

    @property
    def costs(self) -> List[float]:
        """Return the cost per evaluation of each level."""
        return list(self._costs)

    def __len__(self):
        return len(self._integrands)

    def integrand(self, level: int) -> Callable:
        """Return ``f_level``."""
        return self._integrands[level]

    def evaluate(self, level: int, points) -> np.ndarray:
        """Values of ``f_level`` at the points."""
        return evaluate(self._integrands[level], points)

    def increment(self, level: int, points) -> np.ndarray:
        """Values of ``f_level - f_{level-1}`` at the points."""
        values = self.evaluate(level, points)
        if level > 0:
            values = values - self.evaluate(level - 1, points)
        return values

    def with_costs(self, costs: Sequence[float]) -> 'LevelHierarchy':
        """Same integrands with another cost vector."""
        return LevelHierarchy(self._integrands, costs, self.name)

    def __repr__(self):
        return 'LevelHierarchy(name={!r}, levels={}, costs={})'.format(
            self.name, self.num_levels, self._costs)


class LevelReport:
    """Contribution and diagnostics of one level of a multilevel estimate."""

    def __init__(self, level: int, contribution: float, num_points: int,
                 num_fit: int = 0, coefficient: float = float('nan'),
                 condition: float = float('nan'), jitter: float = float('nan'),
                 lengthscale: float = float('nan'), variance: float = float('nan')):
        self.level = level
        self.contribution = contribution
        self.num_points = num_points
        self.num_fit = num_fit
        self.coefficient = coefficient
        self.condition = condition
        self.jitter = jitter
        self.lengthscale = lengthscale
        self.variance = variance

    def to_dict(self) -> dict:
        """Return the report as a plain dictionary."""
        return dict(vars(self))

    def __repr__(self):
        return 'LevelReport(level={}, contribution={}, n={}, m={})'.format(
            self.level, self.contribution, self.num_points, self.num_fit)


class EstimateReport:
    """A multilevel estimate with its per-level breakdown."""

    def __init__(self, method: str, levels: List[LevelReport], costs: Sequence[float]):
        self._method = method
        self._levels = list(levels)
        self._costs = list(costs)

    @property
    def method(self) -> str:
        """Return the estimator name."""
        return self._method

    @property
    def estimate(self) -> float:
        """Return the sum of the level contributions."""
        return math.fsum(level.contribution for level in self._levels)

    @property
    def per_level(self) -> List[LevelReport]:
        """Return the level reports, coarsest first."""
        return list(self._levels)

    @property
    def total_cost(self) -> float:
        """Return ``sum_l n_l C_l`` in seconds."""
        return math.fsum(level.num_points * cost
                         for level, cost in zip(self._levels, self._costs))

    def to_dict(self) -> dict:
        """Return the report as a plain dictionary."""
        return {'method': self._method,
                'estimate': self.estimate,
                'total_cost': self.total_cost,
                'levels': [level.to_dict() for level in self._levels]}

    def __repr__(self):
        return 'EstimateReport(method={!r}, estimate={}, levels={})'.format(
            self._method, self.estimate, len(self._levels))


def _check_levels(h: LevelHierarchy, per_level: Sequence, what: str):
    if len(per_level) != h.num_levels:
        raise ConfigurationError('Got', len(per_level), what, 'for a hierarchy of',
                                 h.num_levels, 'levels')


def _resolve_cf_levels(h: LevelHierarchy, cf_levels: Optional[Iterable[int]]):
    if cf_levels is None:
        return set(range(h.num_levels))
    cf_levels = set(int(level) for level in cf_levels)
    unknown = [level for level in cf_levels if not 0 <= level < h.num_levels]
    if unknown:
        raise ConfigurationError('Control functional levels', sorted(unknown),
                                 'are outside the hierarchy')
    return cf_levels


def _mc_level(level: int, values: np.ndarray) -> LevelReport:
    if values.size == 0:
        raise ConfigurationError('Level', level, 'has no points')
    variance = float(np.var(values, ddof=1)) if values.size > 1 else float('nan')
    mean = float(np.mean(values))
    return LevelReport(level, mean, values.size, coefficient=mean, variance=variance)


def mlmc_estimate(h: LevelHierarchy, samples: Sequence,
                  increments: Optional[Sequence[np.ndarray]] = None) -> EstimateReport:
    """
    Multilevel Monte Carlo estimate ``sum_l mean(f_l - f_{l-1})``.

    Args:
        h: the level hierarchy
        samples: one point set per level
        increments: optional precomputed increment values per level

    Returns:
        EstimateReport: the estimate and the per-level means

    Raises:
        ConfigurationError: if the number of point sets does not match the
            hierarchy or a level has no points
    """
    _check_levels(h, samples, 'point sets')
    levels = []
    for level, points in enumerate(samples):
        values = h.increment(level, points) if increments is None \
            else np.asarray(increments[level], dtype=float)
        levels.append(_mc_level(level, values))
    return EstimateReport('mlmc', levels, h.costs)


def mlcf_standard(ks_per_level: Sequence[Optional[SteinKernel]], h: LevelHierarchy,
                  splits: Sequence[SampleSplit],
                  cf_levels: Optional[Iterable[int]] = None,
                  jitter_scale: float = DEFAULT_JITTER,
                  increments: Optional[Sequence[np.ndarray]] = None,
                  scores: Optional[Sequence[np.ndarray]] = None,
                  condition: bool = True) -> EstimateReport:
    """
    Standard multilevel control functional estimate.

    Each level applies the standard control functional to its increment
    with that level's Stein kernel. The estimate is unbiased when every
    evaluation set holds independent draws from the target.

    Args:
        ks_per_level: Stein kernel of each level, unused on plain levels
        h: the level hierarchy
        splits: fitting and evaluation points of each level
        cf_levels: levels using a control functional, all by default
        jitter_scale: relative jitter for the gram solves
        increments: optional precomputed increments on ``split.points()``
        scores: optional precomputed scores on ``split.points()``
        condition: whether to record gram condition numbers

    Returns:
        EstimateReport: the estimate with ``a_l``, jitter and condition per level

    Raises:
        ConfigurationError: on a level/split count mismatch or an empty
            evaluation set
        SingularGramError: if a gram cannot be factorized
    """
    _check_levels(h, splits, 'sample splits')
    _check_levels(h, ks_per_level, 'kernels')
    use_cf = _resolve_cf_levels(h, cf_levels)
    levels = []
    for level, split in enumerate(splits):
        values = h.increment(level, split.points()) if increments is None \
            else np.asarray(increments[level], dtype=float)
        if level not in use_cf:
            levels.append(_mc_level(level, values))
            continue
        level_scores = None if scores is None else scores[level]
        m = split.num_fit
        result = cf_standard_values(
            ks_per_level[level], split, values[:m], values[m:],
            scores0=None if level_scores is None else level_scores[:m],
            scores1=None if level_scores is None else level_scores[m:],
            jitter_scale=jitter_scale, condition=condition)
        levels.append(LevelReport(level, result.estimate, split.num_points, m,
                                  result.fit.beta, result.fit.condition,
                                  result.fit.jitter, result.lengthscale, result.variance))
    return EstimateReport('mlcf-standard', levels, h.costs)


def mlcf_simplified(ks_per_level: Sequence[Optional[SteinKernel]], h: LevelHierarchy,
                    points_per_level: Sequence,
                    cf_levels: Optional[Iterable[int]] = None,
                    jitter_scale: float = DEFAULT_JITTER,
                    increments: Optional[Sequence[np.ndarray]] = None,
                    scores: Optional[Sequence[np.ndarray]] = None,
                    condition: bool = True) -> EstimateReport:
    """
    Simplified multilevel control functional estimate.

    Each level contributes ``1'G_l^-1 (f_l - f_{l-1}) / 1'G_l^-1 1``. Any
    point design may be used.

    Args:
        ks_per_level: Stein kernel of each level, unused on plain levels
        h: the level hierarchy
        points_per_level: one point set per level
        cf_levels: levels using a control functional, all by default
        jitter_scale: relative jitter for the gram solves
        increments: optional precomputed increments per level
        scores: optional precomputed scores per level
        condition: whether to record gram condition numbers

    Returns:
        EstimateReport: the estimate with ``a_l``, jitter and condition per level
    """
    _check_levels(h, points_per_level, 'point sets')
    _check_levels(h, ks_per_level, 'kernels')
    use_cf = _resolve_cf_levels(h, cf_levels)
    levels = []
    for level, points in enumerate(points_per_level):
        points = as_points(points)
        values = h.increment(level, points) if increments is None \
            else np.asarray(increments[level], dtype=float)
        if level not in use_cf:
            levels.append(_mc_level(level, values))
            continue
        if values.size == 0:
            raise ConfigurationError('Level', level, 'has no points')
        result = cf_simplified_values(
            ks_per_level[level], points, values,
            scores=None if scores is None else scores[level],
            jitter_scale=jitter_scale, condition=condition)
        levels.append(LevelReport(level, result.estimate, values.size, values.size,
                                  result.fit.beta, result.fit.condition,
                                  result.fit.jitter, result.lengthscale))
    return EstimateReport('mlcf-simplified', levels, h.costs)

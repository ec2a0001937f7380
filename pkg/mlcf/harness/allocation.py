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
Budget allocation across levels.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import BudgetError, ConfigurationError

logger = logging.getLogger(__name__)

MIN_LEVEL_SIZE = 2

# (budget seconds) -> (level sizes, control functional size, plain MC size);
# plain MC on the boundary-value problem spends the whole budget at the top level
PUBLISHED_ALLOCATIONS = {
    'bvp': {
        0.30: ((70, 10, 2), 15, 25),
        0.91: ((209, 31, 5), 45, 76),
        1.52: ((349, 52, 6), 75, 127),
    },
    'lotka-volterra': {
        0.26: ((207, 23, 2), 20, 20),
        0.51: ((413, 47, 4), 40, 40),
        0.77: ((620, 70, 6), 60, 60),
    },
}


class Allocation:
    """Sample sizes of the multilevel and single-level estimators."""

    def __init__(self, level_sizes: Sequence[int], cf_size: int, mc_size: int,
                 policy: str = 'given'):
        self.level_sizes = [int(size) for size in level_sizes]
        self.cf_size = int(cf_size)
        self.mc_size = int(mc_size)
        self.policy = policy

    def nominal_cost(self, costs: Sequence[float]) -> float:
        """Return ``sum_l n_l C_l``."""
        return math.fsum(size * cost for size, cost in zip(self.level_sizes, costs))

    def to_dict(self) -> dict:
        """Return the allocation as a dictionary."""
        return {'level_sizes': list(self.level_sizes), 'cf_size': self.cf_size,
                'mc_size': self.mc_size, 'policy': self.policy}

    def __eq__(self, other):
        return isinstance(other, Allocation) and \
            (self.level_sizes, self.cf_size, self.mc_size) == \
            (other.level_sizes, other.cf_size, other.mc_size)

    def __repr__(self):
        return 'Allocation(n={}, cf={}, mc={})'.format(self.level_sizes, self.cf_size,
                                                       self.mc_size)


def _check_costs(costs: Sequence[float], budget: float) -> List[float]:
    costs = [float(cost) for cost in costs]
    if not costs or any(not cost > 0 for cost in costs):
        raise ConfigurationError('Level costs must be positive, got', costs)
    if budget < max(costs):
        raise BudgetError('Budget', budget, 'does not pay for one top-level evaluation '
                          'costing', max(costs))
    return costs


def preset_row(problem: str, budget: float) -> Optional[Tuple]:
    """The published allocation of ``problem`` at ``budget``, if there is one."""
    for preset_budget, row in PUBLISHED_ALLOCATIONS.get(problem, {}).items():
        if math.isclose(preset_budget, budget, rel_tol=1e-9):
            return row
    return None


def mlmc_optimal_sizes(costs: Sequence[float], variances: Sequence[float],
                       budget: float) -> np.ndarray:
    """
    Real-valued sizes ``n_l = T sqrt(V_l / C_l) / sum_k sqrt(V_k C_k)``.

    These minimize ``sum_l V_l / n_l`` subject to ``sum_l n_l C_l = T``.
    """
    costs = np.asarray(costs, dtype=float)
    variances = np.asarray(variances, dtype=float)
    if variances.shape != costs.shape:
        raise ConfigurationError('Got', variances.size, 'variances for', costs.size,
                                 'levels')
    if np.any(variances < 0) or not np.all(np.isfinite(variances)):
        raise ConfigurationError('Pilot variances must be finite and nonnegative')
    # a level with zero pilot variance still gets the floor
    roots = np.sqrt(np.maximum(variances, 1e-300))
    return budget * roots / np.sqrt(costs) / float(np.sum(roots * np.sqrt(costs)))


def allocate_budget(costs: Sequence[float], budget: float, policy: str = 'paper-preset',
                    problem: Optional[str] = None,
                    variances: Optional[Sequence[float]] = None) -> Allocation:
    """
    Split a budget in seconds into per-level sample sizes.

    Args:
        costs: seconds per evaluation of each level
        budget: total budget ``T``
        policy: ``'paper-preset'`` returns the published sizes of ``problem``
            at ``budget``; ``'mlmc-optimal'`` scales ``sqrt(V_l / C_l)`` to
            the budget and floors every level at two points
        problem: problem id, needed by ``'paper-preset'``
        variances: pilot variances of the level increments, needed by
            ``'mlmc-optimal'``

    Returns:
        Allocation: the multilevel sizes and the sizes of the single-level
        control functional and plain Monte Carlo estimators

    Raises:
        BudgetError: if the budget is below the cost of one top-level evaluation
        ConfigurationError: if there is no preset for ``(problem, budget)`` or
            the arguments do not fit the policy
    """
    budget = float(budget)
    costs = _check_costs(costs, budget)
    if policy == 'paper-preset':
        row = preset_row(problem, budget)
        if row is None:
            raise ConfigurationError('No published allocation for', problem, 'at budget',
                                     budget, '; use mlmc-optimal')
        sizes, cf_size, mc_size = row
        if len(sizes) != len(costs):
            raise ConfigurationError('Published allocation has', len(sizes),
                                     'levels, the hierarchy', len(costs))
        return Allocation(sizes, cf_size, mc_size, policy)
    if policy == 'mlmc-optimal':
        if variances is None:
            raise ConfigurationError('mlmc-optimal allocation needs pilot variances')
        exact = mlmc_optimal_sizes(costs, variances, budget)
        sizes = [max(MIN_LEVEL_SIZE, int(math.floor(size + 1e-9))) for size in exact]
        single = max(MIN_LEVEL_SIZE, int(math.floor(budget / costs[-1] + 1e-9)))
        return Allocation(sizes, single, single, policy)
    raise ConfigurationError('Unknown allocation policy', policy)


def check_budget_honesty(allocation: Allocation, costs: Sequence[float], budget: float,
                         tolerance: float = 1.1) -> bool:
    """
    Whether ``sum_l n_l C_l`` stays within ``tolerance`` times the budget.

    A warning is logged when it does not.
    """
    spent = allocation.nominal_cost(costs)
    honest = spent <= tolerance * budget
    if not honest:
        logger.warning('Allocation %s costs %.4g s against a budget of %.4g s',
                       allocation.level_sizes, spent, budget)
    return honest


def preset_budgets(problem: str) -> List[float]:
    """Budgets with a published allocation for ``problem``."""
    return sorted(PUBLISHED_ALLOCATIONS.get(problem, {}))

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
Metropolis-adjusted Langevin sampler with dual-averaging step adaptation.

Proposals are ``y = x + (eps^2 / 2) M g(x) + eps sqrt(M) xi`` with ``g`` the
score, ``M`` a diagonal preconditioner and ``xi`` standard normal. During
burn-in the step ``eps`` is tuned towards an acceptance rate of 0.574.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..exceptions import ConfigurationError, EvaluationError
from ..kernels.base import as_point
from ..kernels.density import TargetDensity
from .streams import SeededStream

logger = logging.getLogger(__name__)

TARGET_ACCEPTANCE = 0.574

# dual averaging constants
_GAMMA = 0.05
_T0 = 10.0
_KAPPA = 0.75


class MalaChain:
    """States of a Langevin chain after burn-in, with their diagnostics."""

    def __init__(self, states: np.ndarray, log_densities: np.ndarray, scores: np.ndarray,
                 acceptance_rate: float, step_size: float):
        self.states = states
        self.log_densities = log_densities
        self.scores = scores
        self.acceptance_rate = acceptance_rate
        self.step_size = step_size

    def __len__(self):
        return self.states.shape[0]

    def __repr__(self):
        return 'MalaChain(states={}, acceptance_rate={:.3f}, step_size={:.4g})'.format(
            len(self), self.acceptance_rate, self.step_size)


def _log_proposal(to_point, from_point, from_score, step, mass):
    drift = from_point + 0.5 * step ** 2 * mass * from_score
    return -0.5 * np.sum((to_point - drift) ** 2 / mass) / step ** 2


def mala_log_acceptance(target: TargetDensity, x, y, step: float,
                        mass: Optional[Sequence[float]] = None) -> float:
    """
    Log Metropolis-Hastings ratio for a move from ``x`` to ``y``.

    Returns:
        float: ``log pi(y) - log pi(x) + log q(x | y) - log q(y | x)``
    """
    x = as_point(x)
    y = as_point(y)
    mass = np.ones_like(x) if mass is None else np.asarray(mass, dtype=float)
    return (target.log_density(y) - target.log_density(x)
            + _log_proposal(x, y, target.score(y), step, mass)
            - _log_proposal(y, x, target.score(x), step, mass))


def mcmc_chain(target: TargetDensity, init, num_states: int, burn_in: int,
               step_scale: float, stream: SeededStream, thin: int = 1,
               adapt: bool = True, mass: Optional[Sequence[float]] = None) -> MalaChain:
    """
    Run a Langevin chain on ``target``.

    Args:
        target: the target, which must have a log density
        init: the starting point
        num_states: number of states returned after burn-in and thinning
        burn_in: number of discarded iterations, used for step adaptation
        step_scale: initial step size ``eps``
        stream: random stream of the chain
        thin: keep every ``thin``-th state after burn-in
        adapt: whether to adapt the step size during burn-in
        mass: diagonal preconditioner, identity by default

    Returns:
        MalaChain: the kept states with log densities, scores, the
        acceptance rate after burn-in and the final step size

    Raises:
        ConfigurationError: if the target has no log density or the
            arguments are out of range
        EvaluationError: if the log density is not finite at ``init``
    """
    if not target.has_log_density:
        raise ConfigurationError('Langevin chains need a log density')
    if int(num_states) < 1 or int(burn_in) < 0 or int(thin) < 1 or not step_scale > 0:
        raise ConfigurationError('Invalid chain settings: states', num_states, 'burn-in',
                                 burn_in, 'thin', thin, 'step', step_scale)
    current = as_point(init).copy()
    mass = np.ones_like(current) if mass is None else np.asarray(mass, dtype=float)
    if mass.shape != current.shape or not np.all(mass > 0):
        raise ConfigurationError('Preconditioner must be positive with one entry per '
                                 'dimension')
    sqrt_mass = np.sqrt(mass)
    current_log = target.log_density(current)
    if not np.isfinite(current_log):
        raise EvaluationError('Log density is not finite at the initial point',
                              list(current), point=current)
    current_score = target.score(current)

    rng = stream.generator()
    step = float(step_scale)
    mu = np.log(10 * step)
    avg_stat = 0.0
    log_step_bar = 0.0

    num_states = int(num_states)
    total = int(burn_in) + num_states * int(thin)
    states = np.empty((num_states, current.size))
    log_densities = np.empty(num_states)
    scores = np.empty((num_states, current.size))
    accepted = 0
    kept = 0
    for it in range(total):
        noise = rng.standard_normal(current.size)
        log_u = np.log(rng.uniform())
        proposal = current + 0.5 * step ** 2 * mass * current_score + step * sqrt_mass * noise
        proposal_log = target.log_density(proposal)
        if np.isfinite(proposal_log):
            proposal_score = target.score(proposal)
            log_ratio = (proposal_log - current_log
                         + _log_proposal(current, proposal, proposal_score, step, mass)
                         - _log_proposal(proposal, current, current_score, step, mass))
        else:
            log_ratio = -np.inf
        accept = log_u < log_ratio
        if accept:
            current, current_log, current_score = proposal, proposal_log, proposal_score

        if it < burn_in:
            if adapt:
                accept_prob = float(np.exp(min(0.0, log_ratio)))
                count = it + 1
                avg_stat += ((TARGET_ACCEPTANCE - accept_prob) - avg_stat) / (count + _T0)
                log_step = mu - np.sqrt(count) / _GAMMA * avg_stat
                weight = count ** -_KAPPA
                log_step_bar = weight * log_step + (1 - weight) * log_step_bar
                step = float(np.exp(log_step))
                if it == burn_in - 1:
                    step = float(np.exp(log_step_bar))
            continue

        accepted += int(accept)
        if (it - burn_in + 1) % thin == 0:
            states[kept] = current
            log_densities[kept] = current_log
            scores[kept] = current_score
            kept += 1

    rate = accepted / float(total - burn_in)
    if not 0.05 <= rate <= 0.95:
        logger.warning('Langevin acceptance rate %.3f is outside [0.05, 0.95] '
                       '(step %.3g)', rate, step)
    return MalaChain(states, log_densities, scores, rate, step)

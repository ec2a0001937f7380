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
Benchmark problems built from a configuration.

A :class:`Problem` bundles the level hierarchy, the target density, the
point samplers and a reference value. Expensive pieces (the reference
value, the MAP start of Langevin chains) are computed on first use.

Random streams are keyed by tuples of different lengths so they never
collide: ``(0,)`` for the reference value, ``(1, level)`` for pilot runs
and ``(replication, sampler, level)`` in the runner.
"""

import functools
import logging
import os
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..exceptions import ConfigurationError
from ..estimators.multilevel import LevelHierarchy
from ..kernels.density import TargetDensity, gaussian_target
from ..models.bvp import bvp_input_spec, bvp_truth
from ..models.hierarchy import (BVP_COSTS, BVP_STEPS, LV_COSTS, LV_STEPS,
                                make_bvp_hierarchy, make_lv_hierarchy,
                                make_synthetic_hierarchy, measure_costs)
from ..models.lotka_volterra import (DEFAULT_PRIOR_MEAN, NUM_PARAMS, LvPosterior,
                                     lv_laplace_scales, lv_map_estimate, lv_truth,
                                     load_hare_lynx)
from ..models.truth import TruthOracle
from ..sampling.gaussian import GaussianSpec, sample_iid, sample_lhs
from ..sampling.mcmc import mcmc_chain
from ..sampling.sobol import sample_sobol
from ..sampling.streams import SeededStream
from .config import ExperimentConfig

logger = logging.getLogger(__name__)

SAMPLER_CODES = {'iid': 0, 'sobol': 1, 'lhs': 2, 'mcmc': 3}

TRUTH_STREAM = (0,)
PILOT_STREAM = 1

DEFAULT_CHAIN = {'burn_in': 200, 'thin': 1, 'step_scale': 0.5}


class Design:
    """Points drawn by one sampler, with chain diagnostics for ``mcmc``."""

    def __init__(self, points: np.ndarray, scores: Optional[np.ndarray] = None,
                 acceptance_rate: float = float('nan'), step_size: float = float('nan')):
        self.points = points
        self.scores = scores
        self.acceptance_rate = acceptance_rate
        self.step_size = step_size

    def __len__(self):
        return self.points.shape[0]

    def head(self, num_points: int) -> 'Design':
        """The first ``num_points`` points."""
        scores = None if self.scores is None else self.scores[:num_points]
        return Design(self.points[:num_points], scores, self.acceptance_rate,
                      self.step_size)


class Problem:
    """A level hierarchy with its target, samplers and reference value."""

    def __init__(self, name: str, hierarchy: LevelHierarchy, target: TargetDensity,
                 truth: Callable[[], TruthOracle], spec: Optional[GaussianSpec] = None,
                 start: Optional[Callable] = None, chain: Optional[dict] = None):
        """
        Args:
            name: problem id
            hierarchy: the level hierarchy
            target: the density the inputs are distributed by
            truth: function computing the reference value
            spec: Gaussian input distribution, for the ``iid``, ``sobol`` and
                ``lhs`` samplers
            start: function returning the start and diagonal mass of
                Langevin chains; the mean and variances of ``spec`` by default
            chain: ``burn_in``, ``thin`` and ``step_scale`` of Langevin chains
        """
        self.name = name
        self.hierarchy = hierarchy
        self.target = target
        self.spec = spec
        self.chain = dict(DEFAULT_CHAIN, **(chain or {}))
        self._truth_factory = truth
        self._truth = None
        self._start_factory = start
        self._start = None

    @property
    def dim(self) -> int:
        """Return the input dimension."""
        return self.target.dim

    @property
    def truth(self) -> TruthOracle:
        """Return the reference value, computing it on first access."""
        if self._truth is None:
            self._truth = self._truth_factory()
            logger.info('Reference value of %s: %r', self.name, self._truth)
        return self._truth

    @property
    def chain_start(self):
        """Return ``(start, mass)`` of Langevin chains, computing them on first access."""
        if self._start is None:
            if self._start_factory is not None:
                self._start = self._start_factory()
            elif self.spec is not None:
                self._start = (self.spec.mean, self.spec.sd ** 2)
            else:
                self._start = (np.zeros(self.dim), np.ones(self.dim))
        return self._start

    def prepare(self, samplers: Sequence[str]) -> TruthOracle:
        """
        Compute the lazy pieces needed by ``samplers`` before the problem is
        shipped to worker processes.

        Returns:
            TruthOracle: the reference value
        """
        if 'mcmc' in samplers:
            start, mass = self.chain_start
            logger.debug('Chains start at %s with mass %s', start, mass)
        return self.truth

    def draw(self, sampler: str, num_points: int, stream: SeededStream,
             skip: int = 0) -> Design:
        """
        Draw points with one of the samplers.

        Args:
            sampler: ``'iid'``, ``'sobol'``, ``'lhs'`` or ``'mcmc'``
            num_points: number of points
            stream: random stream; unused by ``sobol``
            skip: Sobol points skipped before the first drawn one

        Raises:
            ConfigurationError: if the sampler needs a Gaussian input
                distribution the problem does not have
        """
        if sampler == 'mcmc':
            start, mass = self.chain_start
            chain = mcmc_chain(self.target, start, num_points, int(self.chain['burn_in']),
                               float(self.chain['step_scale']), stream,
                               thin=int(self.chain['thin']), mass=mass)
            return Design(chain.states, chain.scores, chain.acceptance_rate,
                          chain.step_size)
        if self.spec is None:
            raise ConfigurationError('Problem', self.name, 'has no Gaussian input for the',
                                     sampler, 'sampler')
        if sampler == 'iid':
            return Design(sample_iid(self.spec, num_points, stream))
        if sampler == 'lhs':
            return Design(sample_lhs(self.spec, num_points, stream))
        if sampler == 'sobol':
            return Design(sample_sobol(self.spec, num_points, skip))
        raise ConfigurationError('Unknown sampler', sampler)

    def pilot_variances(self, sampler: str, num_points: int, seed: int) -> List[float]:
        """Sample variances of the level increments on pilot draws."""
        variances = []
        for level in range(self.hierarchy.num_levels):
            stream = SeededStream(seed, (PILOT_STREAM, level))
            design = self.draw(sampler, num_points, stream, skip=level * num_points)
            increments = self.hierarchy.increment(level, design.points)
            variances.append(float(np.var(increments, ddof=1)))
        logger.info('Pilot variances of %s: %s', self.name, variances)
        return variances

    def __repr__(self):
        return 'Problem(name={!r}, dim={}, levels={})'.format(
            self.name, self.dim, self.hierarchy.num_levels)


def _given_or_cached(config: ExperimentConfig, compute: Callable[[], TruthOracle]):
    truth = config.truth
    if truth.get('value') is not None:
        return TruthOracle('given', truth['value'], truth.get('error', 0.0))
    cache = truth.get('cache')
    if cache and os.path.isfile(cache):
        logger.info('Reading reference value from %s', cache)
        return TruthOracle.load(cache)
    oracle = compute()
    if cache:
        oracle.save(cache)
    return oracle


def _truth(config: ExperimentConfig, compute: Callable[[], TruthOracle]):
    return functools.partial(_given_or_cached, config, compute)


def _preset_costs(config: ExperimentConfig, steps: Sequence[float],
                  preset_steps: Sequence[float], preset_costs: Sequence[float]):
    if config.costs is not None:
        return config.costs
    if config.measure_costs:
        # replaced by build_problem
        return [1.0] * len(steps)
    if tuple(steps) == tuple(preset_steps):
        return preset_costs
    return None


def _bvp_problem(config: ExperimentConfig) -> Problem:
    block = config.bvp
    spec = bvp_input_spec(block.get('x1_convention', 'sd'), float(block.get('x1_scale', 0.2)))
    steps = config.steps or BVP_STEPS
    hierarchy = make_bvp_hierarchy(steps, _preset_costs(config, steps, BVP_STEPS, BVP_COSTS))
    target = gaussian_target(spec.mean, spec.sd)
    return Problem('bvp', hierarchy, target, _truth(config, functools.partial(bvp_truth, spec)),
                   spec=spec)


def _lv_start(posterior: LvPosterior):
    start = lv_map_estimate(posterior)
    return start, lv_laplace_scales(posterior, start) ** 2


def _lv_problem(config: ExperimentConfig) -> Problem:
    block = config.lotka_volterra
    mean = block.get('prior_mean') or DEFAULT_PRIOR_MEAN
    sd = block.get('prior_sd') or [1.0] * NUM_PARAMS
    posterior = LvPosterior(load_hare_lynx(block.get('data')), GaussianSpec(mean, sd),
                            step=float(block['posterior_step']))
    steps = config.steps or LV_STEPS
    horizon = float(block['horizon'])
    hierarchy = make_lv_hierarchy(steps, _preset_costs(config, steps, LV_STEPS, LV_COSTS),
                                  horizon=horizon, rule=block['rule'])
    truth = functools.partial(lv_truth, posterior, int(block['truth_chain_length']),
                              SeededStream(int(config.truth.get('seed', 0)), TRUTH_STREAM),
                              integrand_step=float(block['truth_step']), horizon=horizon,
                              rule=block['rule'])
    chain = {key: block[key] for key in ('burn_in', 'thin', 'step_scale')}
    return Problem('lotka-volterra', hierarchy, posterior, _truth(config, truth),
                   start=functools.partial(_lv_start, posterior), chain=chain)


def _exact_truth(value: float) -> TruthOracle:
    return TruthOracle('exact', value, 0.0)


def _synthetic_problem(config: ExperimentConfig) -> Problem:
    block = config.synthetic
    dim = int(block['dim'])
    hierarchy = make_synthetic_hierarchy(dim, int(block['num_levels']),
                                         float(block['ratio']), config.costs)
    spec = GaussianSpec(np.zeros(dim), np.ones(dim))
    target = gaussian_target(spec.mean, spec.sd)
    return Problem('synthetic', hierarchy, target,
                   _truth(config, functools.partial(_exact_truth, float(dim))), spec=spec)


_BUILDERS = {'bvp': _bvp_problem, 'lotka-volterra': _lv_problem,
             'synthetic': _synthetic_problem}


def build_problem(config: ExperimentConfig) -> Problem:
    """
    Build the problem named by a configuration.

    With ``measure_costs`` set, level costs are re-timed on draws from the
    input distribution (the chain start for the Lotka-Volterra posterior).

    Raises:
        ConfigurationError: if the configuration does not fit the problem
    """
    problem = _BUILDERS[config.problem](config)
    if config.steps is not None and len(config.steps) != problem.hierarchy.num_levels:
        raise ConfigurationError('Got', len(config.steps), 'steps for',
                                 problem.hierarchy.num_levels, 'levels')
    if config.level_sizes is not None and \
            len(config.level_sizes) != problem.hierarchy.num_levels:
        raise ConfigurationError('Got', len(config.level_sizes), 'level sizes for',
                                 problem.hierarchy.num_levels, 'levels')
    if config.measure_costs:
        if problem.spec is not None:
            points = sample_iid(problem.spec, 10, SeededStream(config.seed, (PILOT_STREAM,)))
        else:
            points = [problem.chain_start[0]]
        problem.hierarchy = problem.hierarchy.with_costs(
            measure_costs(problem.hierarchy, points))
    return problem

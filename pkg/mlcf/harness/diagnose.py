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
Per-level diagnostics of the control functional fits.
"""

import logging
from typing import List, Optional

import numpy as np

from ..estimators.control_functionals import level_kernel, split_sample
from ..estimators.diagnostics import fill_distance
from ..estimators.linalg import gram_condition, solve_regularized
from ..exceptions import MlcfError
from ..kernels.stein import stein_gram
from ..sampling.streams import SeededStream
from .allocation import Allocation
from .config import ExperimentConfig
from .problems import Problem, build_problem
from .runner import ReplicationDesigns, resolve_allocation

logger = logging.getLogger(__name__)

DOMAIN_STREAM = (2,)


class LevelDiagnostics:
    """Fit diagnostics of one level under one sampler."""

    def __init__(self, sampler: str, level: int, num_points: int, num_fit: int,
                 fill_distance: float = float('nan'), condition: float = float('nan'),
                 lengthscale: float = float('nan'), jitter: float = float('nan'),
                 acceptance_rate: float = float('nan'), error: Optional[str] = None):
        self.sampler = sampler
        self.level = level
        self.num_points = num_points
        self.num_fit = num_fit
        self.fill_distance = fill_distance
        self.condition = condition
        self.lengthscale = lengthscale
        self.jitter = jitter
        self.acceptance_rate = acceptance_rate
        self.error = error

    def to_dict(self) -> dict:
        """Return the diagnostics as a dictionary."""
        return dict(vars(self))

    def __repr__(self):
        return 'LevelDiagnostics({}, level={}, fill={:.4g}, cond={:.3g})'.format(
            self.sampler, self.level, self.fill_distance, self.condition)


class DiagnosticsReport:
    """Diagnostics of every level of every sampler in a configuration."""

    def __init__(self, name: str, levels: List[LevelDiagnostics]):
        self.name = name
        self.levels = list(levels)

    def for_sampler(self, sampler: str) -> List[LevelDiagnostics]:
        """Diagnostics of one sampler, by level."""
        return [entry for entry in self.levels if entry.sampler == sampler]

    def to_dict(self) -> dict:
        """Return the report as a JSON-ready dictionary."""
        return {'name': self.name, 'levels': [entry.to_dict() for entry in self.levels]}


def _domain_sample(problem: Problem, seed: int, domain_size: int) -> np.ndarray:
    stream = SeededStream(seed, DOMAIN_STREAM)
    sampler = 'iid' if problem.spec is not None else 'mcmc'
    return problem.draw(sampler, domain_size, stream).points


def _level(problem, config, designs, sampler, level, num_points, standard, domain_points):
    entry = LevelDiagnostics(sampler, level, num_points, 0)
    try:
        design = designs.design(sampler, level, num_points)
        entry.acceptance_rate = design.acceptance_rate
        fit = split_sample(design.points, config.split_fraction).x0 if standard \
            else design.points
        entry.num_fit = fit.shape[0]
        entry.fill_distance = fill_distance(fit, domain_points)
        lengthscale = config.kernel.get('lengthscale')
        ks = level_kernel(problem.target, fit,
                          None if lengthscale is None else float(lengthscale),
                          float(config.kernel.get('amplitude', 1.0)))
        entry.lengthscale = ks.base.lengthscale
        scores = designs.scores(sampler, level, num_points)[:fit.shape[0]]
        gram = stein_gram(ks, fit, scores)
        _, entry.jitter = solve_regularized(gram, np.ones(fit.shape[0]), config.jitter)
        entry.condition = gram_condition(gram, entry.jitter)
    except MlcfError as err:
        logger.warning('Diagnostics of level %d with %s failed: %s', level, sampler,
                       err.message)
        entry.error = err.message
    return entry


def diagnose(config: ExperimentConfig, problem: Optional[Problem] = None,
             allocation: Optional[Allocation] = None, replication: int = 0,
             domain_size: int = 256) -> DiagnosticsReport:
    """
    Fill distances and gram conditioning of the level fits.

    For each sampler of the configuration and each level, the fitting
    points of the given replication (the first ``split_fraction`` of them
    when a standard estimator uses the sampler) are compared against a
    sample of the target.

    Args:
        config: the experiment
        problem: the problem, built from ``config`` if not given
        allocation: sample sizes, resolved from ``config`` if not given
        replication: replication whose points are inspected
        domain_size: number of domain points

    Returns:
        DiagnosticsReport: one entry per sampler and level; failures are
        recorded in the entries
    """
    problem = problem or build_problem(config)
    allocation = allocation or resolve_allocation(config, problem)
    domain_points = _domain_sample(problem, config.seed, domain_size)
    samplers = config.samplers or ['iid' if problem.spec is not None else 'mcmc']
    designs = ReplicationDesigns(problem, config, allocation, replication)
    levels = []
    for sampler in samplers:
        standard = any(method.is_standard for method in config.methods
                       if method.sampler == sampler)
        for level, num_points in enumerate(allocation.level_sizes):
            levels.append(_level(problem, config, designs, sampler, level, num_points,
                                 standard, domain_points))
    return DiagnosticsReport(config.name, levels)

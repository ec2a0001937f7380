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
Replicated estimator comparisons.

Every replication draws its own points from independent streams. Within a
replication, methods that share a sampler see the same points, so their
errors can be compared pairwise.
"""

import itertools
import logging
import math
import time
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import binomtest

from ..estimators.control_functionals import (cf_simplified_values, cf_standard_values,
                                              level_kernel, split_sample)
from ..estimators.multilevel import (EstimateReport, LevelReport, mlcf_simplified,
                                     mlcf_standard, mlmc_estimate)
from ..exceptions import MlcfError
from ..logging import MlcfLogging
from ..sampling.streams import SeededStream
from .allocation import Allocation, allocate_budget, check_budget_honesty
from .config import ExperimentConfig, MethodSpec
from .problems import SAMPLER_CODES, Design, Problem, build_problem

logger = logging.getLogger(__name__)

RECORD_LOGGER = 'mlcf.harness.records'


class MethodRecord:
    """The outcome of one method in one replication."""

    def __init__(self, method: str, sampler: str, replication: int, estimate: float,
                 abs_error: float, cost_seconds: float, wall_seconds: float = float('nan'),
                 error: Optional[str] = None, report: Optional[EstimateReport] = None):
        self.method = method
        self.sampler = sampler
        self.replication = replication
        self.estimate = estimate
        self.abs_error = abs_error
        self.cost_seconds = cost_seconds
        self.wall_seconds = wall_seconds
        self.error = error
        self.report = report

    @property
    def failed(self) -> bool:
        """Whether the method raised instead of returning an estimate."""
        return self.error is not None

    def to_dict(self) -> dict:
        """Return the record without its per-level report."""
        return {'method': self.method, 'sampler': self.sampler,
                'replication': self.replication, 'estimate': self.estimate,
                'abs_error': self.abs_error, 'cost_seconds': self.cost_seconds,
                'wall_seconds': self.wall_seconds, 'error': self.error}

    def __repr__(self):
        if self.failed:
            return 'MethodRecord({}, r={}, failed)'.format(self.method, self.replication)
        return 'MethodRecord({}, r={}, estimate={})'.format(self.method, self.replication,
                                                            self.estimate)


def sign_test(errors_a: Sequence[float], errors_b: Sequence[float]) -> float:
    """
    One-sided sign test that ``a`` has the smaller errors.

    Args:
        errors_a: absolute errors of the first method, one per replication
        errors_b: paired absolute errors of the second method

    Returns:
        float: the p-value of the binomial test on the number of
        replications where ``a`` beats ``b``, ties dropped; 1 without
        untied pairs
    """
    errors_a = np.asarray(errors_a, dtype=float)
    errors_b = np.asarray(errors_b, dtype=float)
    if errors_a.shape != errors_b.shape:
        raise ValueError('Paired errors differ in length')
    wins = int(np.sum(errors_a < errors_b))
    untied = int(np.sum(errors_a != errors_b))
    if untied == 0:
        return 1.0
    return float(binomtest(wins, untied, 0.5, alternative='greater').pvalue)


class RunResult:
    """All replication records of an experiment."""

    def __init__(self, config: ExperimentConfig, truth, allocation: Allocation,
                 records: List[MethodRecord], costs: Sequence[float]):
        self.config = config
        self.truth = truth
        self.allocation = allocation
        self.costs = list(costs)
        order = {label: i for i, label in enumerate(self.methods)}
        self.records = sorted(records, key=lambda rec: (rec.replication,
                                                        order.get(rec.method, len(order))))

    @property
    def methods(self) -> List[str]:
        """Method labels in configuration order."""
        return [method.label for method in self.config.methods]

    @property
    def replications(self) -> int:
        """Return the number of replications."""
        return self.config.replications

    def records_for(self, method: str, include_failed: bool = False) -> List[MethodRecord]:
        """Records of one method, sorted by replication."""
        return [rec for rec in self.records
                if rec.method == method and (include_failed or not rec.failed)]

    def estimates(self, method: str) -> np.ndarray:
        """Estimates of the successful replications of a method."""
        return np.array([rec.estimate for rec in self.records_for(method)])

    def errors(self, method: str) -> np.ndarray:
        """Absolute errors of the successful replications of a method."""
        return np.array([rec.abs_error for rec in self.records_for(method)])

    def failures(self, method: Optional[str] = None) -> int:
        """Number of failed replications, of one method or overall."""
        return sum(1 for rec in self.records
                   if rec.failed and (method is None or rec.method == method))

    @property
    def total_cost(self) -> float:
        """Nominal cost ``sum n_l C_l`` of all successful estimates."""
        return math.fsum(rec.cost_seconds for rec in self.records if not rec.failed)

    @property
    def wall_seconds(self) -> float:
        """Measured time spent in the estimators."""
        return math.fsum(rec.wall_seconds for rec in self.records
                         if not math.isnan(rec.wall_seconds))

    def paired_errors(self, method_a: str, method_b: str) -> Tuple[np.ndarray, np.ndarray]:
        """Errors of two methods on the replications where both succeeded."""
        errors_a = {rec.replication: rec.abs_error for rec in self.records_for(method_a)}
        errors_b = {rec.replication: rec.abs_error for rec in self.records_for(method_b)}
        common = sorted(set(errors_a) & set(errors_b))
        return (np.array([errors_a[r] for r in common]),
                np.array([errors_b[r] for r in common]))

    def compare(self, method_a: str, method_b: str) -> float:
        """Sign-test p-value that ``method_a`` has smaller errors than ``method_b``."""
        return sign_test(*self.paired_errors(method_a, method_b))

    def summary(self) -> Dict[str, dict]:
        """Median, quartiles and failure counts per method."""
        out = {}
        for method in self.methods:
            errors = self.errors(method)
            failures = self.failures(method)
            entry = {'num_success': int(errors.size), 'failures': failures,
                     'failure_rate': failures / float(self.replications),
                     'median': None, 'q1': None, 'q3': None, 'mean_estimate': None,
                     'total_cost': math.fsum(rec.cost_seconds
                                             for rec in self.records_for(method))}
            if errors.size:
                q1, median, q3 = np.percentile(errors, [25, 50, 75])
                entry.update(median=float(median), q1=float(q1), q3=float(q3),
                             mean_estimate=float(np.mean(self.estimates(method))))
            out[method] = entry
        return out

    def __repr__(self):
        return 'RunResult(name={!r}, replications={}, methods={}, failures={})'.format(
            self.config.name, self.replications, self.methods, self.failures())


def resolve_allocation(config: ExperimentConfig, problem: Problem) -> Allocation:
    """
    Sample sizes of a configuration.

    Explicit ``level_sizes`` win; otherwise the budget is split by the
    configured policy, with pilot variances for ``mlmc-optimal``.
    """
    costs = problem.hierarchy.costs
    if config.level_sizes is not None:
        spent = math.fsum(size * cost for size, cost in zip(config.level_sizes, costs))
        single = config.single_level_size or \
            max(2, int(math.floor(spent / costs[-1] + 1e-9)))
        return Allocation(config.level_sizes, single, config.mc_size or single)

    variances = None
    if config.allocation == 'mlmc-optimal':
        samplers = [method.sampler for method in config.methods if method.is_multilevel]
        sampler = samplers[0] if samplers else ('iid' if problem.spec is not None else 'mcmc')
        variances = problem.pilot_variances(sampler, config.pilot_size, config.seed)
    allocation = allocate_budget(costs, config.budget, config.allocation, config.problem,
                                 variances)
    if config.single_level_size:
        allocation.cf_size = config.single_level_size
    if config.mc_size:
        allocation.mc_size = config.mc_size
    check_budget_honesty(allocation, costs, config.budget)
    return allocation


class ReplicationDesigns:
    """Point sets and their values for one replication, drawn on first use."""

    def __init__(self, problem: Problem, config: ExperimentConfig, allocation: Allocation,
                 replication: int):
        self.problem = problem
        self.config = config
        self.allocation = allocation
        self.replication = replication
        self.top = problem.hierarchy.num_levels
        self._single = max(allocation.cf_size, allocation.mc_size)
        self._designs = {}
        self._values = {}
        self._scores = {}

    def _skip(self, level: int) -> int:
        sizes = self.allocation.level_sizes
        block = sum(sizes) + self._single
        return self.replication * block + sum(sizes[:level])

    def _pool(self, sampler: str, level: int, num_points: int):
        if level < self.top:
            return sampler, level, num_points
        # prefixes of iid, Sobol and chain draws are draws of the same kind
        return sampler, level, num_points if sampler == 'lhs' else self._single

    def design(self, sampler: str, level: int, num_points: int) -> Design:
        """Points of a level; ``level == num_levels`` is the single-level design."""
        key = self._pool(sampler, level, num_points)
        if key not in self._designs:
            stream = SeededStream(self.config.seed,
                                  (self.replication, SAMPLER_CODES[sampler], level))
            self._designs[key] = self.problem.draw(sampler, key[2], stream, self._skip(level))
        return self._designs[key].head(num_points)

    def values(self, sampler: str, level: int, num_points: int) -> np.ndarray:
        """Level increments, or top-level values for the single-level design."""
        key = self._pool(sampler, level, num_points)
        if key not in self._values:
            points = self.design(sampler, level, key[2]).points
            hierarchy = self.problem.hierarchy
            self._values[key] = hierarchy.increment(level, points) if level < self.top \
                else hierarchy.evaluate(self.top - 1, points)
        return self._values[key][:num_points]

    def scores(self, sampler: str, level: int, num_points: int) -> np.ndarray:
        """Target scores at the points."""
        key = self._pool(sampler, level, num_points)
        if key not in self._scores:
            design = self.design(sampler, level, key[2])
            self._scores[key] = design.scores if design.scores is not None \
                else self.problem.target.scores(design.points)
        return self._scores[key][:num_points]


def _kernel_options(config: ExperimentConfig) -> dict:
    lengthscale = config.kernel.get('lengthscale')
    return {'lengthscale': None if lengthscale is None else float(lengthscale),
            'amplitude': float(config.kernel.get('amplitude', 1.0))}


def _single_level(method: MethodSpec, problem: Problem, config: ExperimentConfig,
                  designs: ReplicationDesigns, allocation: Allocation) -> EstimateReport:
    top = designs.top
    cost = problem.hierarchy.costs[-1]
    if method.estimator == 'mc':
        values = designs.values(method.sampler, top, allocation.mc_size)
        variance = float(np.var(values, ddof=1)) if values.size > 1 else float('nan')
        mean = float(np.mean(values))
        return EstimateReport(method.label, [LevelReport(top - 1, mean, values.size,
                                                         coefficient=mean,
                                                         variance=variance)], [cost])

    num_points = allocation.cf_size
    points = designs.design(method.sampler, top, num_points).points
    values = designs.values(method.sampler, top, num_points)
    scores = designs.scores(method.sampler, top, num_points)
    if method.is_standard:
        split = split_sample(points, config.split_fraction)
        m = split.num_fit
        ks = level_kernel(problem.target, split.x0, **_kernel_options(config))
        result = cf_standard_values(ks, split, values[:m], values[m:], scores[:m],
                                    scores[m:], config.jitter, condition=True)
    else:
        m = num_points
        ks = level_kernel(problem.target, points, **_kernel_options(config))
        result = cf_simplified_values(ks, points, values, scores, config.jitter,
                                      condition=True)
    level = LevelReport(top - 1, result.estimate, num_points, m, result.fit.beta,
                        result.fit.condition, result.fit.jitter, result.lengthscale,
                        result.variance)
    return EstimateReport(method.label, [level], [cost])


def _multilevel(method: MethodSpec, problem: Problem, config: ExperimentConfig,
                designs: ReplicationDesigns, allocation: Allocation) -> EstimateReport:
    hierarchy = problem.hierarchy
    sizes = allocation.level_sizes
    levels = range(hierarchy.num_levels)
    points = [designs.design(method.sampler, level, sizes[level]).points for level in levels]
    increments = [designs.values(method.sampler, level, sizes[level]) for level in levels]
    if method.estimator == 'mlmc':
        report = mlmc_estimate(hierarchy, points, increments)
        return EstimateReport(method.label, report.per_level, hierarchy.costs)

    cf_levels = set(levels) if config.cf_levels is None else set(config.cf_levels)
    scores = [designs.scores(method.sampler, level, sizes[level]) if level in cf_levels
              else None for level in levels]
    options = _kernel_options(config)
    if method.estimator == 'mlcf-standard':
        splits = [split_sample(level_points, config.split_fraction) for level_points in points]
        kernels = [level_kernel(problem.target, splits[level].x0, **options)
                   if level in cf_levels else None for level in levels]
        report = mlcf_standard(kernels, hierarchy, splits, config.cf_levels, config.jitter,
                               increments, scores)
    else:
        kernels = [level_kernel(problem.target, points[level], **options)
                   if level in cf_levels else None for level in levels]
        report = mlcf_simplified(kernels, hierarchy, points, config.cf_levels, config.jitter,
                                 increments, scores)
    return EstimateReport(method.label, report.per_level, hierarchy.costs)


def run_method(method: MethodSpec, problem: Problem, config: ExperimentConfig,
               allocation: Allocation, designs: ReplicationDesigns) -> EstimateReport:
    """Estimate with one method on the designs of a replication."""
    if method.is_multilevel:
        return _multilevel(method, problem, config, designs, allocation)
    return _single_level(method, problem, config, designs, allocation)


def run_replication(problem: Problem, config: ExperimentConfig, allocation: Allocation,
                    replication: int, truth_value: float) -> List[MethodRecord]:
    """
    Run every configured method on one replication.

    Methods raising :class:`~mlcf.exceptions.MlcfError` are recorded as
    failed; the others are unaffected.
    """
    designs = ReplicationDesigns(problem, config, allocation, replication)
    records = []
    for method in config.methods:
        start = time.perf_counter()
        try:
            report = run_method(method, problem, config, allocation, designs)
        except MlcfError as err:
            logger.warning('Replication %d of %s failed: %s', replication, method.label,
                           err.message)
            records.append(MethodRecord(method.label, method.sampler, replication,
                                        float('nan'), float('nan'), float('nan'),
                                        time.perf_counter() - start, error=err.message))
            continue
        estimate = report.estimate
        records.append(MethodRecord(method.label, method.sampler, replication, estimate,
                                    abs(estimate - truth_value), report.total_cost,
                                    time.perf_counter() - start, report=report))
    return records


def run_experiment(config: ExperimentConfig, problem: Optional[Problem] = None,
                   allocation: Optional[Allocation] = None,
                   n_jobs: Optional[int] = None) -> RunResult:
    """
    Run all replications of an experiment.

    Args:
        config: the experiment
        problem: the problem, built from ``config`` if not given
        allocation: the sample sizes, resolved from ``config`` if not given
        n_jobs: parallel workers, ``config.n_jobs`` by default

    Returns:
        RunResult: one record per replication and method; estimates depend
        only on the configuration and its seed
    """
    problem = problem or build_problem(config)
    allocation = allocation or resolve_allocation(config, problem)
    truth = problem.prepare(config.samplers)
    logger.info('Running %s: %d replications of %s with %s', config.name,
                config.replications, [method.label for method in config.methods],
                allocation)
    per_replication = Parallel(n_jobs=n_jobs or config.n_jobs)(
        delayed(run_replication)(problem, config, allocation, replication, truth.value)
        for replication in range(config.replications))
    result = RunResult(config, truth, allocation,
                       list(itertools.chain.from_iterable(per_replication)),
                       problem.hierarchy.costs)
    record_logger = MlcfLogging().get_logger(RECORD_LOGGER)
    for record in result.records:
        record_logger.log_to_file(experiment=config.name, method=record.method,
                                  sampler=record.sampler, replication=record.replication,
                                  estimate=record.estimate, abs_error=record.abs_error)
    if result.failures():
        logger.warning('%d of %d estimates failed', result.failures(), len(result.records))
    return result

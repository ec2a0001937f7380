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
Single-level Monte Carlo and control functional estimators.

Both control functional estimators fit ``beta = 1'G^-1 f / 1'G^-1 1`` on
a fitting set, with ``G`` the Stein gram of that set. The integrand values
are shifted by their first entry before the solve so that a constant
integrand gives exactly that constant.
"""

import logging
import math
from typing import Callable, Optional

import numpy as np

from ..exceptions import ConfigurationError, EvaluationError
from ..kernels.base import SqExpKernel, as_points, median_heuristic
from ..kernels.density import TargetDensity
from ..kernels.stein import SteinKernel, stein_cross, stein_gram
from .linalg import gram_condition, solve_regularized

logger = logging.getLogger(__name__)

DEFAULT_JITTER = 1e-8


class SampleSplit:
    """Points split into a fitting set ``x0`` and an evaluation set ``x1``."""

    def __init__(self, x0, x1):
        """
        Args:
            x0: fitting points, shape ``(m, d)`` with ``m >= 1``
            x1: evaluation points, shape ``(n - m, d)``, possibly empty

        Raises:
            ConfigurationError: if ``x0`` is empty or the coordinates are
                not finite
        """
        x0 = as_points(x0)
        x1 = np.asarray(x1, dtype=float).reshape(-1, x0.shape[1])
        if x0.shape[0] < 1:
            raise ConfigurationError('The fitting set needs at least one point')
        if not (np.all(np.isfinite(x0)) and np.all(np.isfinite(x1))):
            raise ConfigurationError('Sample split has non-finite coordinates')
        self._x0 = x0
        self._x1 = x1

    @property
    def x0(self) -> np.ndarray:
        """Return the fitting points."""
        return self._x0

    @property
    def x1(self) -> np.ndarray:
        """Return the evaluation points."""
        return self._x1

    @property
    def num_fit(self) -> int:
        """Return the size ``m`` of the fitting set."""
        return self._x0.shape[0]

    @property
    def num_points(self) -> int:
        """Return the total size ``n``."""
        return self._x0.shape[0] + self._x1.shape[0]

    def points(self) -> np.ndarray:
        """All points, fitting set first."""
        return np.vstack([self._x0, self._x1])

    def __repr__(self):
        return 'SampleSplit(m={}, n={})'.format(self.num_fit, self.num_points)


def split_sample(points, split_fraction: float = 0.5) -> SampleSplit:
    """
    Split points into the first ``ceil(fraction * n)`` and the rest.

    Raises:
        ConfigurationError: if the fraction is outside (0, 1]
    """
    if not 0 < split_fraction <= 1:
        raise ConfigurationError('Split fraction must lie in (0, 1], got', split_fraction)
    points = as_points(points)
    num_fit = max(1, int(math.ceil(split_fraction * points.shape[0] - 1e-9)))
    return SampleSplit(points[:num_fit], points[num_fit:])


def evaluate(func: Callable, points) -> np.ndarray:
    """
    Evaluate an integrand at each point.

    Raises:
        EvaluationError: if a value is not finite
    """
    points = as_points(points)
    values = np.array([func(x) for x in points], dtype=float).reshape(-1)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise EvaluationError('Integrand is not finite at point', list(points[bad[0]]),
                              point=points[bad[0]])
    return values


def mc_estimate(values) -> float:
    """Arithmetic mean of the integrand values."""
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size == 0:
        raise ValueError('Monte Carlo estimate of an empty sample')
    return float(np.mean(values))


def level_kernel(target: TargetDensity, points, lengthscale: Optional[float] = None,
                 amplitude: float = 1.0) -> SteinKernel:
    """Stein kernel with a median-heuristic lengthscale on ``points``."""
    if lengthscale is None:
        lengthscale = median_heuristic(points)
    return SteinKernel(SqExpKernel(lengthscale, amplitude), target)


class CfFit:
    """Result of fitting a control functional on a fitting set."""

    def __init__(self, beta: float, weights: np.ndarray, jitter: float,
                 condition: float = float('nan')):
        self.beta = beta
        self.weights = weights
        self.jitter = jitter
        self.condition = condition

    def __repr__(self):
        return 'CfFit(beta={}, jitter={})'.format(self.beta, self.jitter)


def cf_fit(gram: np.ndarray, values: np.ndarray, jitter_scale: float = DEFAULT_JITTER,
           condition: bool = False) -> CfFit:
    """
    Fit the offset ``beta`` and the weights ``G^-1 (f - beta 1)``.

    Args:
        gram: Stein gram of the fitting set
        values: integrand values on the fitting set
        jitter_scale: relative jitter for :func:`solve_regularized`
        condition: whether to compute the condition number of the gram

    Returns:
        CfFit: offset, weights and the jitter applied
    """
    values = np.asarray(values, dtype=float)
    shift = values[0]
    ones = np.ones_like(values)
    solution, jitter = solve_regularized(gram, np.column_stack([values - shift, ones]),
                                         jitter_scale)
    sol_f, sol_1 = solution[:, 0], solution[:, 1]
    offset = ones.dot(sol_f) / ones.dot(sol_1)
    weights = sol_f - offset * sol_1
    cond = gram_condition(gram, jitter) if condition else float('nan')
    return CfFit(shift + offset, weights, jitter, cond)


class CfResult:
    """A control functional estimate with its diagnostics."""

    def __init__(self, estimate: float, fit: CfFit, lengthscale: float,
                 variance: float = float('nan')):
        self.estimate = estimate
        self.fit = fit
        self.lengthscale = lengthscale
        self.variance = variance

    def __repr__(self):
        return 'CfResult(estimate={}, beta={})'.format(self.estimate, self.fit.beta)


def cf_standard_values(ks: SteinKernel, split: SampleSplit, values0, values1,
                       scores0: Optional[np.ndarray] = None,
                       scores1: Optional[np.ndarray] = None,
                       jitter_scale: float = DEFAULT_JITTER,
                       condition: bool = False) -> CfResult:
    """
    Standard control functional estimate from precomputed integrand values.

    The estimate is the mean over ``x1`` of the residual
    ``f(x) - k0(x, x0) G^-1 (f(x0) - beta 1)``.

    Raises:
        ConfigurationError: if the evaluation set is empty
        SingularGramError: if the gram cannot be factorized
    """
    if split.x1.shape[0] == 0:
        raise ConfigurationError('Standard control functional needs a nonempty '
                                 'evaluation set, got n = m =', split.num_fit)
    fit = cf_fit(stein_gram(ks, split.x0, scores=scores0), values0,
                 jitter_scale, condition)
    cross = stein_cross(ks, split.x1, split.x0, scores1=scores1, scores0=scores0)
    residuals = np.asarray(values1, dtype=float) - cross.dot(fit.weights)
    variance = float(np.var(residuals, ddof=1)) if residuals.size > 1 else float('nan')
    return CfResult(float(np.mean(residuals)), fit, ks.base.lengthscale, variance)


def cf_simplified_values(ks: SteinKernel, points, values,
                         scores: Optional[np.ndarray] = None,
                         jitter_scale: float = DEFAULT_JITTER,
                         condition: bool = False) -> CfResult:
    """Simplified control functional estimate from precomputed values."""
    fit = cf_fit(stein_gram(ks, points, scores=scores), values, jitter_scale, condition)
    return CfResult(float(fit.beta), fit, ks.base.lengthscale)


def cf_standard(ks: SteinKernel, f: Callable, split: SampleSplit,
                jitter_scale: float = DEFAULT_JITTER) -> float:
    """
    Standard control functional estimate of the integral of ``f``.

    Unbiased when ``split.x1`` holds independent draws from the target.

    Args:
        ks: Stein kernel for the target
        f: the integrand
        split: fitting and evaluation points
        jitter_scale: relative jitter for the gram solve

    Returns:
        float: the estimate
    """
    return cf_standard_values(ks, split, evaluate(f, split.x0), evaluate(f, split.x1),
                              jitter_scale=jitter_scale).estimate


def cf_simplified(ks: SteinKernel, f: Callable, points,
                  jitter_scale: float = DEFAULT_JITTER) -> float:
    """Simplified control functional estimate ``1'G^-1 f / 1'G^-1 1``."""
    return cf_simplified_values(ks, points, evaluate(f, points),
                                jitter_scale=jitter_scale).estimate


def cf_residual_variance(ks: SteinKernel, f: Callable, split: SampleSplit,
                         jitter_scale: float = DEFAULT_JITTER) -> float:
    """Sample variance of the standard control functional residuals on ``x1``."""
    if split.x1.shape[0] < 2:
        raise ConfigurationError('Residual variance needs two evaluation points')
    return cf_standard_values(ks, split, evaluate(f, split.x0), evaluate(f, split.x1),
                              jitter_scale=jitter_scale).variance

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
Target densities known through their score function.
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from ..exceptions import (ConfigurationError, DimensionMismatchError,
                          EvaluationError, MlcfError)
from .base import as_point, as_points

logger = logging.getLogger(__name__)


class TargetDensity:
    """
    A density on R^d known up to normalization.

    The score ``grad log pi`` is what the Stein kernel needs. When only
    an unnormalized log density is given, the score is taken by central
    finite differences with step ``1e-6 * (1 + |x_i|)``.
    """

    def __init__(self, dim: int,
                 score: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                 log_density: Optional[Callable[[np.ndarray], float]] = None):
        """
        Args:
            dim: the dimension of the target
            score: function returning ``grad log pi(x)``
            log_density: function returning ``log pi(x)`` up to a constant

        Raises:
            ConfigurationError: if neither ``score`` nor ``log_density`` is given
        """
        if int(dim) < 1:
            raise ConfigurationError('Target dimension must be positive, got', dim)
        if score is None and log_density is None:
            raise ConfigurationError('A target needs a score or a log density')
        self._dim = int(dim)
        self._score = score
        self._log_density = log_density

    @property
    def dim(self) -> int:
        """Return the dimension of the target."""
        return self._dim

    @property
    def has_log_density(self) -> bool:
        """Whether an unnormalized log density is available."""
        return self._log_density is not None

    def log_density(self, x) -> float:
        """Unnormalized log density at ``x``."""
        if self._log_density is None:
            raise ConfigurationError('Target has no log density')
        return float(self._log_density(self._check(x)))

    def score(self, x) -> np.ndarray:
        """
        Gradient of the log density at ``x``.

        Raises:
            DimensionMismatchError: if ``x`` or the returned score has the
                wrong length
        """
        x = self._check(x)
        if self._score is None:
            value = finite_difference_score(self._log_density, x)
        else:
            value = np.asarray(self._score(x), dtype=float).reshape(-1)
        if value.size != self._dim:
            raise DimensionMismatchError('Score has length', value.size,
                                         'for a target of dimension', self._dim)
        return value

    def scores(self, points) -> np.ndarray:
        """
        Score at each of a set of points.

        Raises:
            EvaluationError: if the score is not finite at some point
        """
        points = as_points(points)
        out = np.empty_like(points)
        for i, x in enumerate(points):
            try:
                out[i] = self.score(x)
            except (EvaluationError, DimensionMismatchError):
                raise
            except MlcfError as err:
                raise EvaluationError('Score failed at point', list(x), ':',
                                      err.message, point=x) from err
            if not np.all(np.isfinite(out[i])):
                raise EvaluationError('Non-finite score at point', list(x), point=x)
        return out

    def _check(self, x) -> np.ndarray:
        x = as_point(x)
        if x.size != self._dim:
            raise DimensionMismatchError('Point has dimension', x.size,
                                         'for a target of dimension', self._dim)
        return x


def finite_difference_score(log_density: Callable[[np.ndarray], float],
                            x: np.ndarray) -> np.ndarray:
    """Central finite-difference gradient of ``log_density`` at ``x``."""
    x = as_point(x)
    grad = np.empty_like(x)
    for i in range(x.size):
        step = 1e-6 * (1 + abs(x[i]))
        forward = x.copy()
        backward = x.copy()
        forward[i] += step
        backward[i] -= step
        grad[i] = (log_density(forward) - log_density(backward)) / (2 * step)
    return grad


def gaussian_target(mean: Sequence[float], sd: Sequence[float]) -> TargetDensity:
    """Independent Gaussian target with analytic score and log density."""
    mean = as_point(mean)
    sd = np.broadcast_to(as_point(sd), mean.shape).copy()
    if np.any(sd <= 0):
        raise ConfigurationError('Standard deviations must be positive')
    var = sd ** 2

    def score(x):
        return -(x - mean) / var

    def log_density(x):
        return -0.5 * float(np.sum((x - mean) ** 2 / var))

    return TargetDensity(mean.size, score=score, log_density=log_density)

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
Squared-exponential base kernel and its analytic derivatives.
"""

import logging
from typing import Sequence, Union

import numpy as np
from sklearn.metrics.pairwise import euclidean_distances

from ..exceptions import ConfigurationError, DimensionMismatchError

logger = logging.getLogger(__name__)

PointLike = Union[Sequence[float], np.ndarray]


class SqExpKernel:
    """Squared-exponential kernel ``a * exp(-|x - y|^2 / (2 l^2))``."""

    def __init__(self, lengthscale: float = 1.0, amplitude: float = 1.0):
        """
        Args:
            lengthscale: the kernel lengthscale ``l``
            amplitude: the kernel amplitude ``a``, so that ``k(x, x) = a``

        Raises:
            ConfigurationError: if either parameter is not positive
        """
        if not np.isfinite(lengthscale) or lengthscale <= 0:
            raise ConfigurationError('Lengthscale must be positive, got', lengthscale)
        if not np.isfinite(amplitude) or amplitude <= 0:
            raise ConfigurationError('Amplitude must be positive, got', amplitude)
        self._lengthscale = float(lengthscale)
        self._amplitude = float(amplitude)

    @property
    def lengthscale(self) -> float:
        """Return the kernel lengthscale."""
        return self._lengthscale

    @property
    def amplitude(self) -> float:
        """Return the kernel amplitude."""
        return self._amplitude

    def __call__(self, x: PointLike, y: PointLike) -> float:
        return se_eval(self, x, y)

    def matrix(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Kernel matrix ``k(xs[i], ys[j])`` for two point arrays."""
        xs = as_points(xs)
        ys = as_points(ys)
        if xs.shape[1] != ys.shape[1]:
            raise DimensionMismatchError('Point sets have dimensions',
                                         xs.shape[1], 'and', ys.shape[1])
        sq_dists = euclidean_distances(xs, ys, squared=True)
        return self._amplitude * np.exp(-sq_dists / (2 * self._lengthscale ** 2))

    def __repr__(self):
        return 'SqExpKernel(lengthscale={}, amplitude={})'.format(
            self._lengthscale, self._amplitude)


def as_point(x: PointLike) -> np.ndarray:
    """Return ``x`` as a 1-d float array."""
    return np.atleast_1d(np.asarray(x, dtype=float))


def as_points(xs) -> np.ndarray:
    """Return a list of points as an ``(n, d)`` float array.

    A 1-d input is read as ``n`` points in one dimension.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim == 1:
        xs = xs[:, None]
    if xs.ndim != 2:
        raise ValueError('Expected a list of points, got an array of shape %s'
                         % (xs.shape,))
    return xs


def _pair(x: PointLike, y: PointLike):
    x = as_point(x)
    y = as_point(y)
    if x.shape != y.shape:
        raise DimensionMismatchError('Points have dimensions', x.size, 'and', y.size)
    return x, y


def se_eval(k: SqExpKernel, x: PointLike, y: PointLike) -> float:
    """Evaluate the kernel at a point pair."""
    x, y = _pair(x, y)
    diff = x - y
    return k.amplitude * float(np.exp(-diff.dot(diff) / (2 * k.lengthscale ** 2)))


def se_grad_x(k: SqExpKernel, x: PointLike, y: PointLike) -> np.ndarray:
    """Gradient of the kernel with respect to its first argument."""
    x, y = _pair(x, y)
    return -(x - y) / k.lengthscale ** 2 * se_eval(k, x, y)


def se_grad_y(k: SqExpKernel, x: PointLike, y: PointLike) -> np.ndarray:
    """Gradient of the kernel with respect to its second argument."""
    x, y = _pair(x, y)
    return (x - y) / k.lengthscale ** 2 * se_eval(k, x, y)


def se_div_grad(k: SqExpKernel, x: PointLike, y: PointLike) -> float:
    """Trace of the mixed second derivative, ``sum_i d^2 k / dx_i dy_i``."""
    x, y = _pair(x, y)
    diff = x - y
    inv_sq = 1.0 / k.lengthscale ** 2
    return (x.size * inv_sq - diff.dot(diff) * inv_sq ** 2) * se_eval(k, x, y)


def median_heuristic(points) -> float:
    """
    Median pairwise Euclidean distance of a point set.

    Args:
        points: the point set, shape ``(n, d)``

    Returns:
        float: the median of the ``n(n-1)/2`` distinct pairwise distances.
        A single point, or a set of coincident points, gives 1.0.
    """
    points = as_points(points)
    num_points = points.shape[0]
    if num_points < 2:
        logger.debug('Median heuristic on %d point(s), using lengthscale 1', num_points)
        return 1.0
    dists = euclidean_distances(points)
    upper = dists[np.triu_indices(num_points, k=1)]
    median = float(np.median(upper))
    if not np.isfinite(median) or median <= 0:
        logger.warning('Median pairwise distance is %s, using lengthscale 1', median)
        return 1.0
    return median

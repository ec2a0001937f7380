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
Langevin Stein kernel built on a squared-exponential base kernel.

For a target with score ``s = grad log pi`` the kernel is::

    k0(x, y) = div_x div_y k + s(x).grad_y k + s(y).grad_x k + s(x).s(y) k

which for the squared-exponential base reduces to::

    k0(x, y) = k(x, y) * (s(x).s(y) + (s(x) - s(y)).(x - y) / l^2
                          + d / l^2 - |x - y|^2 / l^4)
"""

import logging
from typing import Optional

import numpy as np

from ..exceptions import DimensionMismatchError
from .base import SqExpKernel, as_point, as_points
from .density import TargetDensity

logger = logging.getLogger(__name__)


class SteinKernel:
    """Stein kernel for a base kernel and a target density."""

    def __init__(self, base: SqExpKernel, target: TargetDensity):
        self._base = base
        self._target = target

    @property
    def base(self) -> SqExpKernel:
        """Return the base kernel."""
        return self._base

    @property
    def target(self) -> TargetDensity:
        """Return the target density."""
        return self._target

    def __call__(self, x, y) -> float:
        return stein_eval(self, x, y)

    def gram(self, points, scores: Optional[np.ndarray] = None) -> np.ndarray:
        """Shortcut for :func:`stein_gram`."""
        return stein_gram(self, points, scores=scores)

    def cross(self, points1, points0, scores1: Optional[np.ndarray] = None,
              scores0: Optional[np.ndarray] = None) -> np.ndarray:
        """Shortcut for :func:`stein_cross`."""
        return stein_cross(self, points1, points0, scores1=scores1, scores0=scores0)


def stein_block(base: SqExpKernel, xs: np.ndarray, ys: np.ndarray,
                x_scores: np.ndarray, y_scores: np.ndarray) -> np.ndarray:
    """
    Stein kernel matrix from points and precomputed scores.

    Args:
        base: the base kernel
        xs: row points, shape ``(n, d)``
        ys: column points, shape ``(m, d)``
        x_scores: scores at ``xs``
        y_scores: scores at ``ys``

    Returns:
        np.ndarray: the ``(n, m)`` matrix ``k0(xs[i], ys[j])``
    """
    dim = xs.shape[1]
    inv_sq = 1.0 / base.lengthscale ** 2
    diffs = xs[:, None, :] - ys[None, :, :]
    sq_dists = np.einsum('ijk,ijk->ij', diffs, diffs)
    kmat = base.amplitude * np.exp(-0.5 * sq_dists * inv_sq)
    score_dots = x_scores.dot(y_scores.T)
    score_diffs = np.einsum('ijk,ijk->ij', diffs,
                            x_scores[:, None, :] - y_scores[None, :, :])
    return kmat * (score_dots + score_diffs * inv_sq
                   + dim * inv_sq - sq_dists * inv_sq ** 2)


def stein_eval(ks: SteinKernel, x, y) -> float:
    """
    Evaluate the Stein kernel at a point pair.

    Raises:
        DimensionMismatchError: if a point does not match the target dimension
        EvaluationError: if the score is not finite at ``x`` or ``y``
    """
    x = as_point(x)
    y = as_point(y)
    if not x.size == y.size == ks.target.dim:
        raise DimensionMismatchError('Points have dimensions', x.size, 'and', y.size,
                                     'for a target of dimension', ks.target.dim)
    scores = ks.target.scores(np.vstack([x, y]))
    return float(stein_block(ks.base, x[None, :], y[None, :],
                             scores[:1], scores[1:])[0, 0])


def _points_and_scores(ks, points, scores):
    points = as_points(points)
    if points.shape[0] == 0:
        raise ValueError('Empty point set')
    if points.shape[1] != ks.target.dim:
        raise DimensionMismatchError('Points have dimension', points.shape[1],
                                     'for a target of dimension', ks.target.dim)
    if scores is None:
        scores = ks.target.scores(points)
    else:
        scores = as_points(scores)
        if scores.shape != points.shape:
            raise DimensionMismatchError('Scores of shape', scores.shape,
                                         'for points of shape', points.shape)
    return points, scores


def stein_gram(ks: SteinKernel, points, scores: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Symmetric Stein gram matrix of a point set.

    Args:
        ks: the Stein kernel
        points: the point set, shape ``(n, d)``
        scores: optional precomputed scores at ``points``

    Returns:
        np.ndarray: the ``(n, n)`` gram matrix
    """
    points, scores = _points_and_scores(ks, points, scores)
    gram = stein_block(ks.base, points, points, scores, scores)
    return 0.5 * (gram + gram.T)


def stein_cross(ks: SteinKernel, points1, points0,
                scores1: Optional[np.ndarray] = None,
                scores0: Optional[np.ndarray] = None) -> np.ndarray:
    """Cross matrix ``k0(points1[i], points0[j])``."""
    points1, scores1 = _points_and_scores(ks, points1, scores1)
    points0, scores0 = _points_and_scores(ks, points0, scores0)
    return stein_block(ks.base, points1, points0, scores1, scores0)

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
Diagonal Gaussian inputs: independent, Latin hypercube and inverse-CDF maps.
"""

from typing import Sequence

import numpy as np
from scipy.special import ndtri

from ..exceptions import ConfigurationError
from .streams import SeededStream


class GaussianSpec:
    """Independent Gaussian with a mean and a standard deviation per coordinate."""

    def __init__(self, mean: Sequence[float], sd: Sequence[float]):
        """
        Args:
            mean: the mean vector
            sd: the standard deviations, broadcast against ``mean``

        Raises:
            ConfigurationError: if a standard deviation is not positive
        """
        mean = np.atleast_1d(np.asarray(mean, dtype=float))
        sd = np.broadcast_to(np.atleast_1d(np.asarray(sd, dtype=float)), mean.shape).copy()
        if not np.all(np.isfinite(mean)):
            raise ConfigurationError('Gaussian mean must be finite')
        if not np.all(sd > 0):
            raise ConfigurationError('Gaussian standard deviations must be positive, got',
                                     list(sd))
        self._mean = mean
        self._sd = sd

    @property
    def mean(self) -> np.ndarray:
        """Return the mean vector."""
        return self._mean.copy()

    @property
    def sd(self) -> np.ndarray:
        """Return the standard deviations."""
        return self._sd.copy()

    @property
    def dim(self) -> int:
        """Return the dimension."""
        return self._mean.size

    def from_unit(self, uniforms: np.ndarray) -> np.ndarray:
        """Map points of the open unit cube through the Gaussian quantile."""
        return self._mean + self._sd * normal_quantile(uniforms)

    def to_dict(self) -> dict:
        """Return the spec as lists, for JSON output."""
        return {'mean': self._mean.tolist(), 'sd': self._sd.tolist()}

    def __repr__(self):
        return 'GaussianSpec(mean={}, sd={})'.format(self._mean.tolist(), self._sd.tolist())


def normal_quantile(u):
    """Standard normal quantile function."""
    return ndtri(u)


def _check_size(num_points: int):
    if int(num_points) < 1:
        raise ConfigurationError('Number of points must be positive, got', num_points)


def sample_iid(spec: GaussianSpec, num_points: int, stream: SeededStream) -> np.ndarray:
    """Independent draws from ``spec``, shape ``(num_points, dim)``."""
    _check_size(num_points)
    rng = stream.generator()
    return spec.mean + spec.sd * rng.standard_normal((int(num_points), spec.dim))


def lhs_unit(num_points: int, dim: int, stream: SeededStream) -> np.ndarray:
    """
    Latin hypercube design in the unit cube.

    Each coordinate has exactly one point in every interval
    ``[i / n, (i + 1) / n)``, in an independent random order.
    """
    _check_size(num_points)
    rng = stream.generator()
    num_points = int(num_points)
    strata = np.column_stack([rng.permutation(num_points) for _ in range(dim)])
    jitter = rng.uniform(size=(num_points, dim))
    # uniform() can return 0 exactly
    jitter = np.where(jitter > 0, jitter, 0.5)
    return (strata + jitter) / num_points


def sample_lhs(spec: GaussianSpec, num_points: int, stream: SeededStream) -> np.ndarray:
    """Latin hypercube draws from ``spec``."""
    return spec.from_unit(lhs_unit(num_points, spec.dim, stream))

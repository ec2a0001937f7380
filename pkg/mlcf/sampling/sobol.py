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
Sobol low-discrepancy points.

The unscrambled generator of :class:`scipy.stats.qmc.Sobol` carries the
Joe-Kuo direction numbers up to dimension 21201 and emits points in
Gray-code order. The origin is skipped, so the first point is
``(0.5, ..., 0.5)`` and every point lies inside the open cube.
"""

import logging

import numpy as np
from scipy.stats import qmc

from ..exceptions import ConfigurationError
from .gaussian import GaussianSpec

logger = logging.getLogger(__name__)

MAX_DIM = 21201
# resolution of the unscrambled generator
BITS = 30


def max_sobol_dim() -> int:
    """Largest dimension with published direction numbers."""
    return MAX_DIM


def sobol_unit(num_points: int, dim: int, skip: int = 0) -> np.ndarray:
    """
    Sobol points with indices ``skip + 1 .. skip + num_points``.

    Args:
        num_points: number of points
        dim: dimension
        skip: number of points after the origin to discard

    Returns:
        np.ndarray: points in ``(0, 1)^dim``, shape ``(num_points, dim)``

    Raises:
        ConfigurationError: for a dimension outside ``1 .. 21201``, a
            non-positive size, a negative skip or indices beyond ``2^30``
    """
    num_points, skip = int(num_points), int(skip)
    if not 1 <= dim <= MAX_DIM:
        raise ConfigurationError('Sobol points support dimensions 1 to', MAX_DIM, 'got', dim)
    if num_points < 1:
        raise ConfigurationError('Number of points must be positive, got', num_points)
    if skip < 0:
        raise ConfigurationError('Sobol skip must be nonnegative, got', skip)
    if skip + num_points >= 1 << BITS:
        raise ConfigurationError('Sobol index beyond 2^%d' % BITS)
    engine = qmc.Sobol(dim, scramble=False)
    engine.fast_forward(skip + 1)
    return engine.random(num_points)


def sample_sobol(spec: GaussianSpec, num_points: int, skip: int = 0) -> np.ndarray:
    """Sobol points pushed through the quantile of ``spec``."""
    return spec.from_unit(sobol_unit(num_points, spec.dim, skip))

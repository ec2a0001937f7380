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
Space-filling diagnostics for fitting sets.
"""

import numpy as np
from sklearn.neighbors import NearestNeighbors

from ..exceptions import DimensionMismatchError
from ..kernels.base import as_points


def fill_distance(x0, domain_points) -> float:
    """
    Largest distance from a domain point to its nearest fitting point.

    The domain sample stands in for the domain, so this is a lower estimate
    of the fill distance of ``x0``.

    Args:
        x0: the fitting points, shape ``(m, d)``
        domain_points: the domain points, shape ``(p, d)``

    Returns:
        float: ``max_j min_i |domain_points_j - x0_i|``

    Raises:
        ValueError: if a point set is empty
        DimensionMismatchError: if the dimensions differ
    """
    x0 = as_points(x0)
    domain_points = as_points(domain_points)
    if x0.shape[0] == 0 or domain_points.shape[0] == 0:
        raise ValueError('Fill distance needs nonempty point sets')
    if x0.shape[1] != domain_points.shape[1]:
        raise DimensionMismatchError('Fitting points have dimension', x0.shape[1],
                                     'and domain points', domain_points.shape[1])
    neighbours = NearestNeighbors(n_neighbors=1).fit(x0)
    dists, _ = neighbours.kneighbors(domain_points)
    return float(np.max(dists))

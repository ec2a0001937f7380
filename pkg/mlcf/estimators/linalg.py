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
Regularized solves against Stein gram matrices.
"""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg as la

from ..exceptions import SingularGramError

logger = logging.getLogger(__name__)

# number of times the jitter is multiplied by 10 before giving up
MAX_ESCALATIONS = 4
# refinement steps against the regularized system before escalating
MAX_REFINEMENTS = 8
RESIDUAL_TOLERANCE = 1e-8


def solve_regularized(gram: np.ndarray, rhs: np.ndarray,
                      jitter_scale: float = 1e-8) -> Tuple[np.ndarray, float]:
    """
    Solve ``(G + lam I) z = rhs`` by Cholesky factorization.

    The jitter is ``lam = jitter_scale * mean(diag(G))``. If the
    factorization fails, or iterative refinement cannot bring the residual
    below ``1e-8 * norm(rhs)``, it is multiplied by 10, up to four times. A zero
    ``jitter_scale`` escalates from ``1e-12 * mean(diag(G))``.

    Args:
        gram: symmetric positive semidefinite matrix, shape ``(m, m)``
        rhs: right hand side, shape ``(m,)`` or ``(m, k)``
        jitter_scale: relative jitter

    Returns:
        tuple: the solution ``z`` and the jitter ``lam`` actually applied

    Raises:
        ValueError: if the shapes are inconsistent
        SingularGramError: if the factorization fails at the largest jitter
    """
    gram = np.asarray(gram, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
        raise ValueError('Gram matrix must be square, got shape %s' % (gram.shape,))
    if rhs.shape[0] != gram.shape[0]:
        raise ValueError('Right hand side has %d rows for a %d x %d gram'
                         % (rhs.shape[0], gram.shape[0], gram.shape[0]))
    if jitter_scale < 0:
        raise ValueError('Jitter scale must be nonnegative')

    scale = float(np.mean(np.diag(gram)))
    if not np.isfinite(scale) or scale <= 0:
        raise SingularGramError('Gram diagonal has mean', scale)

    jitter = jitter_scale * scale
    identity = np.eye(gram.shape[0])
    bound = RESIDUAL_TOLERANCE * np.linalg.norm(rhs)
    for attempt in range(MAX_ESCALATIONS + 1):
        system = gram + jitter * identity
        try:
            factor = la.cho_factor(system, lower=True)
        except la.LinAlgError:
            factor = None
        if factor is not None:
            solution = la.cho_solve(factor, rhs)
            for _ in range(MAX_REFINEMENTS):
                residual = system.dot(solution) - rhs
                if np.linalg.norm(residual) <= bound:
                    return solution, jitter
                solution = solution - la.cho_solve(factor, residual)
            if np.linalg.norm(system.dot(solution) - rhs) <= bound:
                return solution, jitter
        if attempt == MAX_ESCALATIONS:
            break
        jitter = 10 * jitter if jitter > 0 else 1e-12 * scale
        logger.warning('Cholesky solve failed, raising jitter to %.3g', jitter)

    raise SingularGramError('Gram matrix of size', gram.shape[0],
                            'is singular at jitter', jitter, jitter=jitter)


def gram_condition(gram: np.ndarray, jitter: float = 0.0) -> float:
    """2-norm condition number of ``G + jitter I``."""
    gram = np.asarray(gram, dtype=float)
    return float(np.linalg.cond(gram + jitter * np.eye(gram.shape[0])))

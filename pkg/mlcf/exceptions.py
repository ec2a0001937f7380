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
Exceptions raised by mlcf.

All errors derive from :class:`MlcfError`, so callers that run many
replications can catch a single type and keep going.
"""

from typing import Optional, Sequence


class MlcfError(Exception):
    """Base class for errors raised by mlcf."""

    def __init__(self, *message):
        """Set the error message."""
        super().__init__(' '.join(str(part) for part in message))
        self.message = ' '.join(str(part) for part in message)

    def __str__(self):
        """Return the message."""
        return repr(self.message)


class DimensionMismatchError(MlcfError):
    """Points or vectors of incompatible dimension were combined."""


class EvaluationError(MlcfError):
    """A score or integrand returned non-finite values."""

    def __init__(self, *message, point: Optional[Sequence[float]] = None):
        super().__init__(*message)
        self.point = point


class SingularGramError(MlcfError):
    """A gram matrix could not be factorized even at the largest jitter."""

    def __init__(self, *message, jitter: float = 0.0):
        super().__init__(*message)
        self.jitter = jitter


class ConfigurationError(MlcfError):
    """Invalid experiment, estimator or hierarchy configuration."""


class BudgetError(MlcfError):
    """A budget cannot pay for a single top-level evaluation."""


class DegenerateCoefficientError(MlcfError):
    """The boundary-value diffusion coefficient is not positive."""

    def __init__(self, *message, x1: float = float('nan')):
        super().__init__(*message)
        self.x1 = x1


class TrajectoryError(MlcfError):
    """An ODE trajectory blew up or left the positive orthant."""

    def __init__(self, *message, time: float = float('nan')):
        super().__init__(*message)
        self.time = time


class ScoreError(MlcfError):
    """A gradient of the log density could not be computed."""

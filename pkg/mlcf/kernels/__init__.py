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
===============================
Kernels (:mod:`mlcf.kernels`)
===============================

.. currentmodule:: mlcf.kernels

Base kernels
============

.. autosummary::
   :toctree: ../stubs/

   SqExpKernel
   se_eval
   se_grad_x
   se_grad_y
   se_div_grad
   median_heuristic

Targets
=======

.. autosummary::
   :toctree: ../stubs/

   TargetDensity
   gaussian_target
   finite_difference_score

Stein kernels
=============

.. autosummary::
   :toctree: ../stubs/

   SteinKernel
   stein_eval
   stein_gram
   stein_cross
"""

from .base import (SqExpKernel, se_eval, se_grad_x, se_grad_y, se_div_grad,
                   median_heuristic, as_point, as_points)
from .density import TargetDensity, gaussian_target, finite_difference_score
from .stein import SteinKernel, stein_eval, stein_gram, stein_cross, stein_block

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
===============================
Harness (:mod:`mlcf.harness`)
===============================

.. currentmodule:: mlcf.harness

Experiment runner comparing Monte Carlo, control functional, multilevel
Monte Carlo and multilevel control functional estimators under a budget.

Configuration
=============

.. autosummary::
   :toctree: ../stubs/

   ExperimentConfig
   MethodSpec
   load_config
   list_presets

Problems and budgets
====================

.. autosummary::
   :toctree: ../stubs/

   Problem
   build_problem
   Allocation
   allocate_budget

Running and reporting
=====================

.. autosummary::
   :toctree: ../stubs/

   run_experiment
   RunResult
   MethodRecord
   sign_test
   emit_results
   read_results
   diagnose
   DiagnosticsReport
"""

from .config import ExperimentConfig, MethodSpec, load_config, list_presets
from .allocation import Allocation, allocate_budget, PUBLISHED_ALLOCATIONS
from .problems import Problem, Design, build_problem
from .runner import (RunResult, MethodRecord, run_experiment, run_replication,
                     resolve_allocation, sign_test)
from .results import emit_results, read_results, summary_dict
from .diagnose import diagnose, DiagnosticsReport, LevelDiagnostics

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
Experiment configuration.

Configurations are JSON documents. A document names the problem, the
estimators to compare with their point samplers, the budget or explicit
sample sizes, and the number of replications. Presets ship in the
``presets`` directory next to this module and can be loaded by name.
"""

import copy
import glob
import json
import logging
import os
from typing import List, Optional

from ..exceptions import ConfigurationError

logger = logging.getLogger(__name__)

PROBLEMS = ('bvp', 'lotka-volterra', 'synthetic')
ESTIMATORS = ('mc', 'cf', 'mlmc', 'mlcf-standard', 'mlcf-simplified')
SAMPLERS = ('iid', 'sobol', 'lhs', 'mcmc')
CF_FORMS = ('simplified', 'standard')
ALLOCATION_POLICIES = ('paper-preset', 'mlmc-optimal')

_SAMPLER_ALIASES = {'qmc': 'sobol', 'mala': 'mcmc'}

PRESET_DIR = os.path.join(os.path.dirname(__file__), 'presets')

_DEFAULTS = {
    'methods': [],
    'budget': None,
    'level_sizes': None,
    'single_level_size': None,
    'mc_size': None,
    'allocation': 'paper-preset',
    'replications': 1,
    'seed': 0,
    'n_jobs': 1,
    'kernel': {'lengthscale': None, 'amplitude': 1.0},
    'split_fraction': 0.5,
    'jitter': 1e-8,
    'cf_levels': None,
    'steps': None,
    'costs': None,
    'measure_costs': False,
    'pilot_size': 20,
    'truth': {},
    'bvp': {'x1_convention': 'sd', 'x1_scale': 0.2},
    'lotka_volterra': {'prior_mean': None, 'prior_sd': None, 'posterior_step': 0.02,
                       'horizon': 20.0, 'rule': 'riemann', 'burn_in': 500, 'thin': 1,
                       'step_scale': 0.1, 'truth_chain_length': 1000000,
                       'truth_step': 0.005, 'data': None},
    'synthetic': {'dim': 2, 'num_levels': 2, 'ratio': 0.9},
}


class MethodSpec:
    """An estimator paired with the sampler that feeds it points."""

    def __init__(self, estimator: str, sampler: str = 'iid', form: str = 'simplified'):
        sampler = _SAMPLER_ALIASES.get(sampler, sampler)
        if estimator not in ESTIMATORS:
            raise ConfigurationError('Unknown estimator', estimator,
                                     'expected one of', ESTIMATORS)
        if sampler not in SAMPLERS:
            raise ConfigurationError('Unknown sampler', sampler, 'expected one of', SAMPLERS)
        if form not in CF_FORMS:
            raise ConfigurationError('Unknown control functional form', form)
        self.estimator = estimator
        self.sampler = sampler
        self.form = form

    @property
    def is_multilevel(self) -> bool:
        """Whether the estimator telescopes over levels."""
        return self.estimator.startswith('ml')

    @property
    def is_standard(self) -> bool:
        """Whether the estimator splits its points into fitting and evaluation sets."""
        return self.estimator == 'mlcf-standard' or \
            (self.estimator == 'cf' and self.form == 'standard')

    @property
    def label(self) -> str:
        """Return the name used in results, e.g. ``mlcf-simplified(iid)``."""
        name = 'cf-standard' if self.estimator == 'cf' and self.form == 'standard' \
            else self.estimator
        return '{}({})'.format(name, self.sampler)

    @classmethod
    def from_dict(cls, data: dict) -> 'MethodSpec':
        """Create a method from ``{"estimator", "sampler", "form"}``."""
        if isinstance(data, str):
            return cls(data)
        unknown = set(data) - {'estimator', 'sampler', 'form'}
        if unknown:
            raise ConfigurationError('Unknown method keys', sorted(unknown))
        if 'estimator' not in data:
            raise ConfigurationError('Method', data, 'has no estimator')
        return cls(data['estimator'], data.get('sampler', 'iid'),
                   data.get('form', 'simplified'))

    def to_dict(self) -> dict:
        """Return the method as a config entry."""
        out = {'estimator': self.estimator, 'sampler': self.sampler}
        if self.estimator == 'cf':
            out['form'] = self.form
        return out

    def __eq__(self, other):
        return isinstance(other, MethodSpec) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return 'MethodSpec({})'.format(self.label)



def _merge(defaults: dict, values: dict) -> dict:
    merged = copy.deepcopy(defaults)
    for key, value in values.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _optional(convert, value):
    return None if value is None else convert(value)


def _optional_list(convert, values):
    return None if values is None else [convert(value) for value in values]


class ExperimentConfig:
    """
    A validated experiment configuration.

    Keys not given in the document take their defaults; nested blocks
    (``kernel``, ``bvp``, ``lotka_volterra``, ``synthetic``, ``truth``) are
    merged key by key.
    """

    def __init__(self, data: dict):
        """
        Args:
            data: the configuration document

        Raises:
            ConfigurationError: if a key is unknown or a value is invalid
        """
        if 'problem' not in data:
            raise ConfigurationError('Configuration has no problem')
        unknown = set(data) - set(_DEFAULTS) - {'problem', 'name'}
        if unknown:
            raise ConfigurationError('Unknown configuration keys', sorted(unknown))
        data = _merge(_DEFAULTS, data)
        self.problem = data['problem']
        self.name = data.get('name') or data['problem']
        self.methods = [MethodSpec.from_dict(entry) for entry in data['methods']]
        try:
            self.budget = _optional(float, data['budget'])
            self.level_sizes = _optional_list(int, data['level_sizes'])
            self.single_level_size = _optional(int, data['single_level_size'])
            self.mc_size = _optional(int, data['mc_size'])
            self.allocation = data['allocation']
            self.replications = int(data['replications'])
            self.seed = int(data['seed'])
            self.n_jobs = int(data['n_jobs'])
            self.kernel = data['kernel']
            self.split_fraction = float(data['split_fraction'])
            self.jitter = float(data['jitter'])
            self.cf_levels = _optional_list(int, data['cf_levels'])
            self.steps = _optional_list(float, data['steps'])
            self.costs = _optional_list(float, data['costs'])
            self.measure_costs = bool(data['measure_costs'])
            self.pilot_size = int(data['pilot_size'])
        except (TypeError, ValueError) as err:
            raise ConfigurationError('Invalid configuration value:', err) from err
        self.truth = data['truth']
        self.bvp = data['bvp']
        self.lotka_volterra = data['lotka_volterra']
        self.synthetic = data['synthetic']
        self._validate()

    def _validate(self):
        if self.problem not in PROBLEMS:
            raise ConfigurationError('Unknown problem', self.problem,
                                     'expected one of', PROBLEMS)
        for method in self.methods:
            if method.is_standard and method.sampler != 'iid':
                raise ConfigurationError(
                    'The standard estimator', method.label, 'is unbiased only when its '
                    'evaluation points are independent draws from the target; use the '
                    'iid sampler or the simplified form with', method.sampler)
            if self.problem == 'lotka-volterra' and method.sampler != 'mcmc':
                raise ConfigurationError(
                    'The Lotka-Volterra posterior can only be sampled by mcmc, got',
                    method.label)
        labels = [method.label for method in self.methods]
        if len(set(labels)) != len(labels):
            raise ConfigurationError('Duplicate methods', labels)

        if self.replications < 1:
            raise ConfigurationError('Replications must be at least 1, got',
                                     self.replications)
        if self.seed < 0:
            raise ConfigurationError('Seed must be nonnegative, got', self.seed)
        if self.level_sizes is None and self.budget is None:
            raise ConfigurationError('Give a budget or explicit level_sizes')
        if self.budget is not None and not self.budget > 0:
            raise ConfigurationError('Budget must be positive, got', self.budget)
        if self.level_sizes is not None and \
                (not self.level_sizes or min(self.level_sizes) < 1):
            raise ConfigurationError('Level sizes must be positive, got', self.level_sizes)
        for size in (self.single_level_size, self.mc_size):
            if size is not None and size < 1:
                raise ConfigurationError('Single-level sizes must be positive, got', size)
        if self.allocation not in ALLOCATION_POLICIES:
            raise ConfigurationError('Unknown allocation policy', self.allocation,
                                     'expected one of', ALLOCATION_POLICIES)
        if not 0 < self.split_fraction <= 1:
            raise ConfigurationError('split_fraction must lie in (0, 1], got',
                                     self.split_fraction)
        if self.jitter < 0:
            raise ConfigurationError('Jitter must be nonnegative, got', self.jitter)
        lengthscale = self.kernel.get('lengthscale')
        if lengthscale is not None and not float(lengthscale) > 0:
            raise ConfigurationError('Kernel lengthscale must be positive, got', lengthscale)
        if not float(self.kernel.get('amplitude', 1.0)) > 0:
            raise ConfigurationError('Kernel amplitude must be positive')
        if self.costs is not None and any(not cost > 0 for cost in self.costs):
            raise ConfigurationError('Costs must be positive, got', self.costs)
        if self.pilot_size < 2:
            raise ConfigurationError('pilot_size must be at least 2')

    @property
    def samplers(self) -> List[str]:
        """Distinct samplers used by the methods, in first-use order."""
        out = []
        for method in self.methods:
            if method.sampler not in out:
                out.append(method.sampler)
        return out

    def replace(self, **overrides) -> 'ExperimentConfig':
        """A copy with top-level keys replaced; ``None`` values are ignored."""
        data = self.to_dict()
        data.update({key: value for key, value in overrides.items() if value is not None})
        return ExperimentConfig(data)

    def to_dict(self) -> dict:
        """Return the full configuration with defaults filled in."""
        data = {'name': self.name, 'problem': self.problem,
                'methods': [method.to_dict() for method in self.methods]}
        for key in _DEFAULTS:
            if key != 'methods':
                data[key] = copy.deepcopy(getattr(self, key))
        return data

    def __repr__(self):
        return 'ExperimentConfig(name={!r}, problem={!r}, methods={})'.format(
            self.name, self.problem, [method.label for method in self.methods])


def list_presets() -> List[str]:
    """Names of the shipped configuration presets."""
    return sorted(os.path.splitext(os.path.basename(path))[0]
                  for path in glob.glob(os.path.join(PRESET_DIR, '*.json')))


def load_config(path_or_preset: str, overrides: Optional[dict] = None) -> ExperimentConfig:
    """
    Load a configuration from a JSON file or a preset name.

    Args:
        path_or_preset: path of a JSON document, or the name of a preset
            such as ``'bvp-table1'``
        overrides: top-level keys replacing those of the document; ``None``
            values are ignored

    Raises:
        ConfigurationError: if the file does not exist, is not valid JSON or
            holds an invalid configuration
    """
    path = path_or_preset
    if not os.path.isfile(path):
        path = os.path.join(PRESET_DIR, path_or_preset + '.json')
        if not os.path.isfile(path):
            raise ConfigurationError('No configuration file or preset named', path_or_preset,
                                     '; presets are', list_presets())
    try:
        with open(path, 'r') as config_file:
            data = json.load(config_file)
    except ValueError as err:
        raise ConfigurationError('Cannot parse', path, ':', err) from err
    data.setdefault('name', os.path.splitext(os.path.basename(path))[0])
    if overrides:
        data.update({key: value for key, value in overrides.items() if value is not None})
    logger.debug('Loaded configuration %s from %s', data['name'], path)
    return ExperimentConfig(data)

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
Lotka-Volterra predator-prey model and its posterior given hare-lynx counts.

Parameters are handled on the log scale ``xt = log(x)`` with
``x = (x1, x2, x3, x4, x5, x6, x7, x8)`` the four rates, the two initial
populations and the two observation noise levels. The dynamics are::

    du1/dt = x1 u1 - x2 u1 u2
    du2/dt = x3 u1 u2 - x4 u2

and log observations are Gaussian around the log trajectory with standard
deviation ``x7`` for the prey and ``x8`` for the predators.
"""

import functools
import logging
import math
import os
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from ..exceptions import (ConfigurationError, EvaluationError, ScoreError,
                          TrajectoryError)
from ..kernels.density import TargetDensity, finite_difference_score
from ..numba import jit_fallback
from ..sampling.gaussian import GaussianSpec
from ..sampling.mcmc import mcmc_chain
from ..sampling.streams import SeededStream
from .truth import TruthOracle

logger = logging.getLogger(__name__)

NUM_PARAMS = 8

DEFAULT_PRIOR_MEAN = (-1.2, -4.6, -4.6, -1.2, math.log(30.0), math.log(30.0), -1.0, -1.0)

INTEGRAND_RULES = ('riemann', 'rk4')

SCORE_METHODS = ('sensitivity', 'finite-difference')

# populations above this count as a blow-up
_BLOW_UP = 1e10

# augmented state: u1, u2, du/dx1..x6 for u1, du/dx1..x6 for u2, integral of u1
_WIDTH = 15

_DATA_FILE = os.path.join(os.path.dirname(__file__), 'data', 'hare_lynx.csv')


def default_prior() -> GaussianSpec:
    """Independent unit-variance Gaussian prior on the log parameters."""
    return GaussianSpec(DEFAULT_PRIOR_MEAN, np.ones(NUM_PARAMS))


class LvParameters:
    """Log-scale Lotka-Volterra parameters."""

    def __init__(self, log_params: Sequence[float]):
        log_params = np.asarray(log_params, dtype=float).reshape(-1)
        if log_params.size != NUM_PARAMS:
            raise ConfigurationError('Lotka-Volterra takes', NUM_PARAMS,
                                     'parameters, got', log_params.size)
        self._log = log_params
        self._natural = np.exp(log_params)

    @property
    def log_params(self) -> np.ndarray:
        """Return the log parameters."""
        return self._log.copy()

    @property
    def natural(self) -> np.ndarray:
        """Return ``exp`` of the log parameters."""
        return self._natural.copy()

    @property
    def rates(self) -> np.ndarray:
        """Return ``(x1, x2, x3, x4)``."""
        return self._natural[:4].copy()

    @property
    def initial(self) -> np.ndarray:
        """Return the initial populations ``(x5, x6)``."""
        return self._natural[4:6].copy()

    @property
    def noise(self) -> np.ndarray:
        """Return the observation noise levels ``(x7, x8)``."""
        return self._natural[6:8].copy()

    @classmethod
    def from_natural(cls, natural: Sequence[float]) -> 'LvParameters':
        """Create parameters from positive natural-scale values."""
        natural = np.asarray(natural, dtype=float)
        if np.any(natural <= 0):
            raise ConfigurationError('Natural parameters must be positive')
        return cls(np.log(natural))

    def __repr__(self):
        return 'LvParameters({})'.format(np.round(self._natural, 6).tolist())


class LvDataset:
    """Yearly prey and predator counts."""

    def __init__(self, times: Sequence[float], hare: Sequence[float],
                 lynx: Sequence[float]):
        """
        Args:
            times: observation times in years from the first observation
            hare: prey counts
            lynx: predator counts

        Raises:
            ConfigurationError: if the times are not increasing or a count is
                not positive
        """
        self.times = np.asarray(times, dtype=float).reshape(-1)
        self.hare = np.asarray(hare, dtype=float).reshape(-1)
        self.lynx = np.asarray(lynx, dtype=float).reshape(-1)
        if not self.times.size == self.hare.size == self.lynx.size:
            raise ConfigurationError('Times and counts differ in length')
        if np.any(np.diff(self.times) <= 0):
            raise ConfigurationError('Observation times must be strictly increasing')
        if np.any(self.hare <= 0) or np.any(self.lynx <= 0):
            raise ConfigurationError('Observed populations must be positive')

    def __len__(self):
        return self.times.size

    @property
    def horizon(self) -> float:
        """Return the last observation time."""
        return float(self.times[-1]) if self.times.size else 0.0

    @classmethod
    def empty(cls) -> 'LvDataset':
        """A dataset with no observations."""
        return cls([], [], [])


def load_hare_lynx(path: Optional[str] = None) -> LvDataset:
    """
    Read a ``year,hare,lynx`` CSV file, by default the shipped 1900-1920 counts.

    Times are years since the first row; counts are in thousands.
    """
    table = np.genfromtxt(path or _DATA_FILE, delimiter=',', names=True)
    years = np.atleast_1d(table['year'])
    return LvDataset(years - years[0], np.atleast_1d(table['hare']),
                     np.atleast_1d(table['lynx']))


@jit_fallback
def _lv_rhs(rates, state, sensitivities, out):
    prey_rate, predation, growth, death = rates[0], rates[1], rates[2], rates[3]
    u1 = state[0]
    u2 = state[1]
    out[0] = prey_rate * u1 - predation * u1 * u2
    out[1] = growth * u1 * u2 - death * u2
    out[14] = u1
    for j in range(12):
        out[2 + j] = 0.0
    if sensitivities:
        j11 = prey_rate - predation * u2
        j12 = -predation * u1
        j21 = growth * u2
        j22 = growth * u1 - death
        for j in range(6):
            s1 = state[2 + j]
            s2 = state[8 + j]
            out[2 + j] = j11 * s1 + j12 * s2
            out[8 + j] = j21 * s1 + j22 * s2
        out[2] += u1
        out[3] -= u1 * u2
        out[10] += u1 * u2
        out[11] -= u2


@jit_fallback
def _lv_rk4(rates, initial, step, num_steps, sensitivities, blow_up):
    """
    Fixed-step RK4 on the augmented state.

    Returns the states at every step and the index of the first invalid
    state, or -1 when the whole trajectory is valid.
    """
    states = np.zeros((num_steps + 1, 15))
    states[0, 0] = initial[0]
    states[0, 1] = initial[1]
    if sensitivities:
        states[0, 2 + 4] = 1.0
        states[0, 8 + 5] = 1.0
    k1 = np.empty(15)
    k2 = np.empty(15)
    k3 = np.empty(15)
    k4 = np.empty(15)
    for n in range(num_steps):
        current = states[n]
        _lv_rhs(rates, current, sensitivities, k1)
        _lv_rhs(rates, current + 0.5 * step * k1, sensitivities, k2)
        _lv_rhs(rates, current + 0.5 * step * k2, sensitivities, k3)
        _lv_rhs(rates, current + step * k3, sensitivities, k4)
        nxt = current + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states[n + 1] = nxt
        if not (nxt[0] > 0.0 and nxt[1] > 0.0 and nxt[0] < blow_up and nxt[1] < blow_up):
            return states, n + 1
        if sensitivities:
            for j in range(2, 14):
                if not np.isfinite(nxt[j]):
                    return states, n + 1
    return states, -1


def _num_steps(step: float, horizon: float) -> int:
    if not step > 0 or horizon < 0:
        raise ConfigurationError('Invalid step', step, 'or horizon', horizon)
    steps = int(round(horizon / step))
    if not math.isclose(steps * step, horizon, rel_tol=1e-9, abs_tol=1e-12):
        raise ConfigurationError('Horizon', horizon, 'is not a multiple of the step', step)
    return steps


def _integrate(params: LvParameters, step: float, horizon: float,
               sensitivities: bool) -> np.ndarray:
    num_steps = _num_steps(step, horizon)
    states, failed = _lv_rk4(params.rates, params.initial, float(step), num_steps,
                             bool(sensitivities), _BLOW_UP)
    if failed >= 0:
        raise TrajectoryError('Lotka-Volterra trajectory left the positive range at t =',
                              failed * step, time=failed * step)
    return states


def lv_solve(params: LvParameters, step: float, horizon: float) -> np.ndarray:
    """
    Prey and predator trajectories by fixed-step RK4.

    Args:
        params: model parameters
        step: integration step ``h``
        horizon: final time ``s``, a multiple of ``h``

    Returns:
        np.ndarray: populations at times ``0, h, ..., s``, shape ``(s/h + 1, 2)``

    Raises:
        TrajectoryError: if a population becomes non-positive, non-finite or
            blows up; carries the failing time
    """
    return _integrate(params, step, horizon, False)[:, :2]


def lv_integrand(log_params, step: float, horizon: float = 20.0,
                 rule: str = 'riemann') -> float:
    """
    Average prey population over ``[0, s]``.

    The ``'riemann'`` rule is ``s^-1 h sum_{i=1}^{s/h} u1(t_i)``; the
    ``'rk4'`` rule integrates ``u1`` as an extra RK4 state.
    """
    if rule not in INTEGRAND_RULES:
        raise ConfigurationError('Unknown integrand rule', rule)
    if not horizon > 0:
        raise ConfigurationError('Horizon must be positive')
    states = _integrate(LvParameters(log_params), step, horizon, False)
    if rule == 'riemann':
        return step * float(np.sum(states[1:, 0])) / horizon
    return float(states[-1, 14]) / horizon


class _PosteriorTerms:
    def __init__(self, log_density, score):
        self.log_density = log_density
        self.score = score


def _observation_indices(data: LvDataset, step: float) -> np.ndarray:
    indices = np.rint(data.times / step).astype(int)
    if not np.allclose(indices * step, data.times, rtol=0, atol=1e-9):
        raise ConfigurationError('Observation times are not on the grid of step', step)
    return indices


def _posterior_terms(log_params, data: LvDataset, prior: GaussianSpec, step: float,
                     with_score: bool) -> _PosteriorTerms:
    params = LvParameters(log_params)
    log_params = params.log_params
    prior_var = prior.sd ** 2
    log_density = -0.5 * float(np.sum((log_params - prior.mean) ** 2 / prior_var))
    score = -(log_params - prior.mean) / prior_var
    if len(data) == 0:
        return _PosteriorTerms(log_density, score if with_score else None)

    indices = _observation_indices(data, step)
    states = _integrate(params, step, float(indices[-1] * step), with_score)[indices]
    noise = params.noise
    for species, observed in enumerate((data.hare, data.lynx)):
        model = states[:, species]
        resid = np.log(observed) - np.log(model)
        var = noise[species] ** 2
        log_density += float(-resid.size * log_params[6 + species]
                             - 0.5 * np.sum(resid ** 2) / var)
        if with_score:
            sens = states[:, 2 + 6 * species:8 + 6 * species]
            # chain rule through log u and x = exp(xt)
            score[:6] += (resid / var / model).dot(sens) * params.natural[:6]
            score[6 + species] += -resid.size + float(np.sum(resid ** 2)) / var
    if with_score and not np.all(np.isfinite(score)):
        raise ScoreError('Non-finite posterior score at', list(log_params))
    return _PosteriorTerms(log_density, score if with_score else None)


def lv_log_posterior(log_params, data: LvDataset, prior: GaussianSpec,
                     step: float) -> float:
    """
    Unnormalized log posterior of the log parameters.

    Gaussian log prior plus the log-normal observation log likelihood,
    without the ``2 pi`` constants. A failed trajectory gives ``-inf``.
    """
    try:
        return _posterior_terms(log_params, data, prior, step, False).log_density
    except TrajectoryError as err:
        logger.debug('Log posterior is -inf: %s', err.message)
        return -np.inf


def lv_score(log_params, data: LvDataset, prior: GaussianSpec, step: float) -> np.ndarray:
    """
    Gradient of :func:`lv_log_posterior` by forward sensitivities.

    Raises:
        ScoreError: if the trajectory or its sensitivities fail
    """
    try:
        return _posterior_terms(log_params, data, prior, step, True).score
    except TrajectoryError as err:
        raise ScoreError('Posterior score failed:', err.message) from err


@functools.lru_cache(maxsize=16)
def _cached_terms(key: bytes, data: LvDataset, prior: GaussianSpec, step: float,
                  with_score: bool) -> _PosteriorTerms:
    try:
        return _posterior_terms(np.frombuffer(key), data, prior, step, with_score)
    except TrajectoryError as err:
        logger.debug('Posterior evaluation failed: %s', err.message)
        return _PosteriorTerms(-np.inf, None)


class LvPosterior(TargetDensity):
    """
    The Lotka-Volterra posterior as a target density.

    Failed trajectories give a log density of ``-inf`` and each such log
    density is counted in :attr:`failures`. Evaluations are memoized on the
    point, so a log density followed by a score at the same point costs one
    solve.
    """

    def __init__(self, data: LvDataset, prior: Optional[GaussianSpec] = None,
                 step: float = 0.02, score_method: str = 'sensitivity'):
        if score_method not in SCORE_METHODS:
            raise ConfigurationError('Unknown score method', score_method)
        prior = prior or default_prior()
        if prior.dim != NUM_PARAMS:
            raise ConfigurationError('Prior must have', NUM_PARAMS, 'dimensions')
        if len(data):
            _observation_indices(data, step)
        self.data = data
        self.prior = prior
        self.step = float(step)
        self.score_method = score_method
        self.failures = 0
        super().__init__(NUM_PARAMS, score=self._score, log_density=self._log_density)

    def _terms(self, log_params) -> _PosteriorTerms:
        key = np.ascontiguousarray(log_params, dtype=float).reshape(-1).tobytes()
        return _cached_terms(key, self.data, self.prior, self.step,
                             self.score_method == 'sensitivity')

    def _log_density(self, log_params) -> float:
        log_density = self._terms(log_params).log_density
        if log_density == -np.inf:
            self.failures += 1
        return log_density

    def _score(self, log_params) -> np.ndarray:
        if self.score_method == 'finite-difference':
            return finite_difference_score(self._log_density, log_params)
        terms = self._terms(log_params)
        if terms.score is None:
            raise ScoreError('No posterior score at', list(log_params))
        return terms.score.copy()

    def default_start(self) -> np.ndarray:
        """Prior mean with the initial states at the first observations."""
        start = self.prior.mean
        if len(self.data):
            start[4] = math.log(self.data.hare[0])
            start[5] = math.log(self.data.lynx[0])
        return start


def lv_map_estimate(posterior: LvPosterior, init: Optional[Sequence[float]] = None,
                    max_iter: int = 500) -> np.ndarray:
    """
    Maximum a posteriori log parameters by L-BFGS-B.

    Starts from :meth:`LvPosterior.default_start` unless ``init`` is given.
    """
    start = posterior.default_start() if init is None else np.asarray(init, dtype=float)

    def objective(log_params):
        value = posterior.log_density(log_params)
        if not np.isfinite(value):
            prior_score = -(log_params - posterior.prior.mean) / posterior.prior.sd ** 2
            return 1e30, -prior_score
        return -value, -posterior.score(log_params)

    result = minimize(objective, start, jac=True, method='L-BFGS-B',
                      options={'maxiter': max_iter})
    if not result.success:
        logger.warning('MAP search stopped early: %s', result.message)
    return np.asarray(result.x)


def lv_laplace_scales(posterior: LvPosterior, log_params, rel_step: float = 1e-4,
                      floor: float = 1e-8) -> np.ndarray:
    """
    Posterior standard deviations from the diagonal of the Hessian.

    The Hessian diagonal is a central difference of the score; curvatures
    below ``floor`` are clipped.
    """
    log_params = np.asarray(log_params, dtype=float)
    curvature = np.empty(NUM_PARAMS)
    for j in range(NUM_PARAMS):
        delta = rel_step * (1 + abs(log_params[j]))
        forward = log_params.copy()
        backward = log_params.copy()
        forward[j] += delta
        backward[j] -= delta
        curvature[j] = -(posterior.score(forward)[j]
                         - posterior.score(backward)[j]) / (2 * delta)
    if np.any(curvature < floor):
        logger.warning('Clipping non-positive posterior curvature %s', curvature)
    return 1.0 / np.sqrt(np.maximum(curvature, floor))


def _batch_means_error(values: np.ndarray, num_batches: int = 50) -> float:
    usable = values.size - values.size % num_batches
    if usable < num_batches * 2:
        return float(np.std(values, ddof=1) / math.sqrt(values.size))
    means = values[:usable].reshape(num_batches, -1).mean(axis=1)
    return float(np.std(means, ddof=1) / math.sqrt(num_batches))


def lv_truth(posterior: LvPosterior, chain_length: int, stream: SeededStream,
             integrand_step: float = 0.005, horizon: float = 20.0,
             rule: str = 'riemann', burn_in: int = 2000, step_scale: float = 0.5,
             thin: int = 10) -> TruthOracle:
    """
    Reference posterior mean of the average prey population.

    A Langevin chain of ``chain_length`` states started at the MAP estimate
    and preconditioned by the Laplace scales targets the posterior. Every
    ``thin``-th state is pushed through the integrand at ``integrand_step``.
    The error estimate is the batch-means Monte Carlo standard error.

    Raises:
        EvaluationError: if the integrand fails at a chain state
    """
    start = lv_map_estimate(posterior)
    scales = lv_laplace_scales(posterior, start)
    chain = mcmc_chain(posterior, start, chain_length, burn_in, step_scale, stream,
                       mass=scales ** 2)
    values = []
    for state in chain.states[::thin]:
        try:
            values.append(lv_integrand(state, integrand_step, horizon, rule))
        except TrajectoryError as err:
            raise EvaluationError('Integrand failed at a chain state:', err.message,
                                  point=state) from err
    values = np.asarray(values)
    return TruthOracle('long-chain', float(values.mean()), _batch_means_error(values),
                       {'chain_length': int(chain_length), 'integrand_step': integrand_step,
                        'posterior_step': posterior.step, 'thin': thin,
                        'acceptance_rate': chain.acceptance_rate})

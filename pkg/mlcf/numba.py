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

"""Optional numba compilation of the model kernels.

The tridiagonal and ODE kernels in :mod:`mlcf.models` are plain loops over
numpy arrays. :func:`jit_fallback` compiles them in nopython mode when numba
is importable and ``MLCF_DISABLE_JIT`` is unset or ``0``. Otherwise the
interpreted functions are used unchanged.
"""

import functools
import importlib
import logging
import os
from typing import Callable, Optional

logger = logging.getLogger(__name__)

DISABLE_JIT_VARIABLE = 'MLCF_DISABLE_JIT'


@functools.lru_cache(maxsize=1)
def _numba_module():
    try:
        return importlib.import_module('numba')
    except ImportError:
        logger.info('numba is not installed, the model kernels run interpreted: '
                    'https://pypi.org/project/numba/')
        return None


def jit_enabled() -> bool:
    """Return True when newly decorated kernels will be compiled."""
    if os.environ.get(DISABLE_JIT_VARIABLE, '0') not in ('', '0'):
        return False
    return _numba_module() is not None


def jit_fallback(func: Optional[Callable] = None, *, cache: bool = False):
    """
    Compile ``func`` with ``numba.njit`` when compilation is enabled.

    Usable bare (``@jit_fallback``) or with options
    (``@jit_fallback(cache=True)``).

    Args:
        func: the kernel
        cache: let numba write compiled code to its on-disk cache

    Returns:
        Callable: the compiled dispatcher, or ``func`` itself
    """
    if func is None:
        return functools.partial(jit_fallback, cache=cache)
    if not jit_enabled():
        return func
    logger.debug('Compiling %s with numba', func.__qualname__)
    return _numba_module().njit(cache=cache)(func)

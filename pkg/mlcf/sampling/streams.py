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
Reproducible random streams.
"""

from typing import Tuple, Union

import numpy as np


class SeededStream:
    """
    A random stream identified by a master seed and a stream key.

    Every call to :meth:`generator` returns a fresh generator in the same
    state, so a sampler given the same stream always draws the same values.
    """

    def __init__(self, seed: int, stream_id: Union[int, Tuple[int, ...]] = 0):
        """
        Args:
            seed: 64-bit master seed
            stream_id: stream key, an integer or a tuple of integers

        Raises:
            ValueError: if the seed or a key component is negative
        """
        key = (stream_id,) if np.isscalar(stream_id) else tuple(stream_id)
        if int(seed) < 0 or any(int(k) < 0 for k in key):
            raise ValueError('Seeds and stream keys must be nonnegative')
        self._seed = int(seed)
        self._key = tuple(int(k) for k in key)

    @property
    def seed(self) -> int:
        """Return the master seed."""
        return self._seed

    @property
    def stream_id(self) -> Tuple[int, ...]:
        """Return the stream key."""
        return self._key

    def child(self, *keys: int) -> 'SeededStream':
        """Stream with ``keys`` appended to this stream's key."""
        return SeededStream(self._seed, self._key + tuple(keys))

    def generator(self) -> np.random.Generator:
        """A fresh numpy generator for this stream."""
        return np.random.Generator(np.random.PCG64(
            np.random.SeedSequence(self._seed, spawn_key=self._key)))

    def __eq__(self, other):
        return isinstance(other, SeededStream) and \
            (self._seed, self._key) == (other.seed, other.stream_id)

    def __hash__(self):
        return hash((self._seed, self._key))

    def __repr__(self):
        return 'SeededStream(seed={}, stream_id={})'.format(self._seed, self._key)

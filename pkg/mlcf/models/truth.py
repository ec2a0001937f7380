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
Reference values for the benchmark integrals.
"""

import json
import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)


class TruthOracle:
    """A reference value with an error estimate and the method that produced it."""

    def __init__(self, method: str, value: float, error: float,
                 details: Optional[dict] = None):
        """
        Args:
            method: short tag of the method, e.g. ``'gauss-legendre'``
            value: the reference value
            error: estimated absolute error of ``value``
            details: settings used to compute the value
        """
        self.method = method
        self.value = float(value)
        self.error = float(error)
        self.details = dict(details or {})

    def to_dict(self) -> dict:
        """Return the oracle as a JSON-ready dictionary."""
        return {'method': self.method, 'value': self.value, 'error': self.error,
                'details': self.details}

    @classmethod
    def from_dict(cls, data: dict) -> 'TruthOracle':
        """Create an oracle from :meth:`to_dict` output."""
        return cls(data.get('method', 'given'), data['value'], data.get('error', 0.0),
                   data.get('details'))

    def save(self, path: str):
        """Write the oracle to a JSON file."""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, 'w') as cache:
            json.dump(self.to_dict(), cache, indent=2)
        logger.info('Saved %s reference value to %s', self.method, path)

    @classmethod
    def load(cls, path: str) -> 'TruthOracle':
        """Read an oracle written by :meth:`save`."""
        with open(path, 'r') as cache:
            return cls.from_dict(json.load(cache))

    def __repr__(self):
        return 'TruthOracle(method={!r}, value={}, error={})'.format(
            self.method, self.value, self.error)

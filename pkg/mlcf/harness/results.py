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
Result files for plotting.

``results.csv`` holds one row per successful replication and method;
``summary.json`` echoes the configuration with the reference value, the
allocation and the error quartiles of every method.
"""

import csv
import json
import logging
import math
import os
from typing import Dict, List, Optional

from ..exceptions import ConfigurationError
from .runner import RunResult

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('method', 'sampler', 'replication', 'estimate', 'abs_error', 'cost_seconds')
CSV_FILE = 'results.csv'
SUMMARY_FILE = 'summary.json'
FORMATS = ('csv', 'json', 'all')


def json_safe(value):
    """Replace non-finite floats by ``None`` in nested containers."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    return value


def write_csv(result: RunResult, path: str) -> str:
    """Write the successful records, floats in round-trip precision."""
    with open(path, 'w', newline='') as out:
        writer = csv.writer(out)
        writer.writerow(CSV_COLUMNS)
        for record in result.records:
            if record.failed:
                continue
            writer.writerow([record.method, record.sampler, record.replication,
                             repr(float(record.estimate)), repr(float(record.abs_error)),
                             repr(float(record.cost_seconds))])
    return path


def summary_dict(result: RunResult) -> dict:
    """Return the JSON summary of a run."""
    comparisons = []
    methods = result.methods
    for i, method_a in enumerate(methods):
        for method_b in methods[i + 1:]:
            errors_a, _ = result.paired_errors(method_a, method_b)
            comparisons.append({'a': method_a, 'b': method_b, 'pairs': int(errors_a.size),
                                'p_a_smaller': result.compare(method_a, method_b),
                                'p_b_smaller': result.compare(method_b, method_a)})
    return json_safe({
        'name': result.config.name,
        'config': result.config.to_dict(),
        'truth': result.truth.to_dict(),
        'allocation': result.allocation.to_dict(),
        'costs': result.costs,
        'replications': result.replications,
        'failures': result.failures(),
        'total_cost': result.total_cost,
        'methods': result.summary(),
        'comparisons': comparisons,
    })


def emit_results(result: RunResult, out_dir: str, fmt: str = 'all') -> Dict[str, str]:
    """
    Write the result files of a run.

    Args:
        result: a completed run
        out_dir: directory for the files, created if missing
        fmt: ``'csv'``, ``'json'`` or ``'all'``

    Returns:
        dict: written paths keyed by format

    Raises:
        ConfigurationError: for an unknown format
        OSError: if the files cannot be written
    """
    if fmt not in FORMATS:
        raise ConfigurationError('Unknown result format', fmt, 'expected one of', FORMATS)
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    if fmt in ('csv', 'all'):
        paths['csv'] = write_csv(result, os.path.join(out_dir, CSV_FILE))
    if fmt in ('json', 'all'):
        paths['json'] = os.path.join(out_dir, SUMMARY_FILE)
        with open(paths['json'], 'w') as out:
            json.dump(summary_dict(result), out, indent=2)
    logger.info('Wrote %s', sorted(paths.values()))
    return paths


def read_results(path: str, method: Optional[str] = None) -> List[dict]:
    """
    Read rows written by :func:`emit_results`.

    Args:
        path: a ``results.csv`` file
        method: keep only the rows of this method

    Returns:
        list: one dictionary per row with typed values
    """
    rows = []
    with open(path, 'r', newline='') as source:
        for row in csv.DictReader(source):
            if method is not None and row['method'] != method:
                continue
            rows.append({'method': row['method'], 'sampler': row['sampler'],
                         'replication': int(row['replication']),
                         'estimate': float(row['estimate']),
                         'abs_error': float(row['abs_error']),
                         'cost_seconds': float(row['cost_seconds'])})
    return rows

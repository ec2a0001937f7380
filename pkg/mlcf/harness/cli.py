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
Command-line interface.

::

    mlcf run --config bvp-table1 --seed 3 --out results/
    mlcf allocate --problem bvp --budget 0.30 --policy paper-preset
    mlcf diagnose --config lv-table2
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from ..exceptions import MlcfError
from .config import ALLOCATION_POLICIES, PROBLEMS, ExperimentConfig, list_presets, load_config
from .diagnose import diagnose
from .problems import build_problem
from .results import emit_results, json_safe, summary_dict
from .runner import resolve_allocation, run_experiment

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser of the ``mlcf`` command."""
    parser = argparse.ArgumentParser(
        prog='mlcf', description='Multilevel control functional experiments.')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress (-v) or debug output (-vv)')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    run = commands.add_parser('run', help='run an experiment and write its results')
    run.add_argument('--config', required=True,
                     help='JSON configuration file or preset ({})'.format(
                         ', '.join(list_presets())))
    run.add_argument('--seed', type=int, help='master seed')
    run.add_argument('--out', default='.', help='output directory')
    run.add_argument('--replications', type=int, help='number of replications')
    run.add_argument('--n-jobs', type=int, help='parallel workers')
    run.add_argument('--measure-costs', action='store_true',
                     help='time the levels instead of using the configured costs')
    run.add_argument('--format', default='all', choices=('csv', 'json', 'all'))

    allocate = commands.add_parser('allocate', help='print the sample sizes of a budget')
    allocate.add_argument('--problem', required=True, choices=PROBLEMS)
    allocate.add_argument('--budget', required=True, type=float, help='budget in seconds')
    allocate.add_argument('--policy', default='paper-preset', choices=ALLOCATION_POLICIES)
    allocate.add_argument('--costs', type=float, nargs='+', help='seconds per level')
    allocate.add_argument('--seed', type=int, default=0, help='seed of the pilot run')

    diag = commands.add_parser('diagnose', help='print per-level fit diagnostics')
    diag.add_argument('--config', required=True, help='JSON configuration file or preset')
    diag.add_argument('--seed', type=int, help='master seed')
    diag.add_argument('--replication', type=int, default=0)
    diag.add_argument('--domain-size', type=int, default=256)
    return parser


def _run(args) -> dict:
    config = load_config(args.config, {'seed': args.seed, 'replications': args.replications,
                                       'n_jobs': args.n_jobs,
                                       'measure_costs': args.measure_costs or None})
    result = run_experiment(config)
    paths = emit_results(result, args.out, args.format)
    summary = summary_dict(result)
    return {'files': paths, 'truth': summary['truth'], 'failures': summary['failures'],
            'methods': {method: {key: entry[key] for key in ('median', 'q1', 'q3')}
                        for method, entry in summary['methods'].items()}}


def _allocate(args) -> dict:
    config = ExperimentConfig({'problem': args.problem, 'budget': args.budget,
                               'allocation': args.policy, 'costs': args.costs,
                               'seed': args.seed})
    problem = build_problem(config)
    allocation = resolve_allocation(config, problem)
    return dict(allocation.to_dict(), costs=problem.hierarchy.costs,
                nominal_cost=allocation.nominal_cost(problem.hierarchy.costs))


def _diagnose(args) -> dict:
    config = load_config(args.config, {'seed': args.seed})
    return diagnose(config, replication=args.replication,
                    domain_size=args.domain_size).to_dict()


_COMMANDS = {'run': _run, 'allocate': _allocate, 'diagnose': _diagnose}


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``mlcf`` command; returns the exit status."""
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s: %(name)s - %(message)s')
    try:
        output = _COMMANDS[args.command](args)
    except MlcfError as err:
        print('mlcf {}: {}'.format(args.command, err.message), file=sys.stderr)
        return 1
    print(json.dumps(json_safe(output), indent=2, default=str))
    return 0


if __name__ == '__main__':
    sys.exit(main())

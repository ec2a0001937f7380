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
Test the per-replication records written by experiment runs
"""

import os
import unittest

from pyfakefs import fake_filesystem_unittest

from mlcf.harness import ExperimentConfig, run_experiment
from mlcf.harness.runner import RECORD_LOGGER
from mlcf.logging import MlcfLogging, MlcfLogReader
from mlcf.logging.mlcf_logging import format_record, parse_record

RECORD_KEYS = {'experiment', 'method', 'sampler', 'replication', 'estimate', 'abs_error'}


def _config(**changes):
    config = {'name': 'records', 'problem': 'synthetic',
              'methods': [{'estimator': 'mc'}, {'estimator': 'mlmc'}],
              'level_sizes': [16, 4], 'single_level_size': 8, 'replications': 2,
              'seed': 3, 'n_jobs': 1}
    config.update(changes)
    return ExperimentConfig(config)


class TestRunRecords(fake_filesystem_unittest.TestCase):
    """Records of a run written to and read back from the record file."""

    def setUp(self):
        MlcfLogging._reset_to_defaults(RECORD_LOGGER)
        self.setUpPyfakefs()
        super().setUp()
        mlcf_dir = os.path.join(os.path.expanduser('~'), '.mlcf')
        os.makedirs(mlcf_dir, exist_ok=True)
        self._config_file = os.path.join(mlcf_dir, 'logging.yaml')

    def tearDown(self):
        MlcfLogging._reset_to_defaults(RECORD_LOGGER)
        super().tearDown()

    def _write_settings(self, *lines):
        with open(self._config_file, 'w') as config:
            config.write('\n'.join(lines) + '\n')

    def test_one_record_per_estimate(self):
        """Every method of every replication is written with its fields."""
        self._write_settings('file_logging: true')
        result = run_experiment(_config())
        records = MlcfLogReader().read_records()
        self.assertTrue(os.path.exists('mlcf.log'))
        self.assertEqual(len(records), len(result.records))
        for logged, record in zip(records, result.records):
            self.assertEqual(set(logged), RECORD_KEYS)
            self.assertEqual(logged['experiment'], 'records')
            self.assertEqual(logged['method'], record.method)
            self.assertEqual(logged['sampler'], record.sampler)
            self.assertEqual(int(logged['replication']), record.replication)

    def test_floats_round_trip(self):
        """Estimates and errors read back equal the run's values exactly."""
        self._write_settings('file_logging: true')
        result = run_experiment(_config())
        records = MlcfLogReader().read_records()
        self.assertEqual([float(logged['estimate']) for logged in records],
                         [record.estimate for record in result.records])
        self.assertEqual([float(logged['abs_error']) for logged in records],
                         [record.abs_error for record in result.records])

    def test_key_filtering(self):
        """Only the requested keys are kept."""
        self._write_settings('file_logging: true')
        result = run_experiment(_config())
        records = MlcfLogReader().read_records(keys=['method', 'estimate'])
        self.assertEqual(len(records), len(result.records))
        for logged in records:
            self.assertEqual(set(logged), {'method', 'estimate'})
        self.assertEqual(MlcfLogReader().read_records(keys=['seed']), [])

    def test_no_config_file(self):
        """Without a settings file nothing is written."""
        run_experiment(_config())
        self.assertFalse(os.path.exists('mlcf.log'))
        self.assertEqual(MlcfLogReader().get_log_files(), [])

    def test_disabled_in_config(self):
        """Records are off unless the settings turn them on."""
        self._write_settings('file_logging: false  # not yet', 'log_file: runs.log')
        run_experiment(_config())
        self.assertFalse(os.path.exists('runs.log'))

    def test_rotated_files_in_order(self):
        """Rotation splits the records but reading keeps the run order."""
        self._write_settings('file_logging: true', 'log_file: Runs.log',
                             'max_size: 400', 'max_rotations: 20', 'unknown_key: 1')
        result = run_experiment(_config(replications=4))
        files = MlcfLogReader().get_log_files()
        self.assertGreater(len(files), 1)
        self.assertEqual(files[-1], os.path.abspath('Runs.log'))
        records = MlcfLogReader().read_records()
        self.assertEqual([(logged['method'], int(logged['replication'])) for logged in records],
                         [(record.method, record.replication) for record in result.records])

    def test_records_stay_off_the_console(self):
        """Records bypass the logger's handlers."""
        self._write_settings('file_logging: true')
        logger = MlcfLogging().get_logger(RECORD_LOGGER)
        with self.assertLogs(RECORD_LOGGER, 'DEBUG') as logs:
            logger.log_to_file(method='mc(iid)', estimate=1.5)
            logger.warning('after the record')
        self.assertEqual(logs.output, ['WARNING:{}:after the record'.format(RECORD_LOGGER)])
        self.assertEqual(MlcfLogReader().read_records(),
                         [{'method': 'mc(iid)', 'estimate': '1.5'}])

    def test_record_line_format(self):
        """Fields keep their order and floats their precision."""
        line = format_record(method='mlmc(iid)', replication=3, estimate=0.1 + 0.2)
        self.assertEqual(line,
                         "'method':'mlmc(iid)' 'replication':'3' 'estimate':'0.30000000000000004'")
        self.assertEqual(float(parse_record(line)['estimate']), 0.1 + 0.2)


if __name__ == '__main__':
    unittest.main()

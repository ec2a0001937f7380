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
Test the mlcf command
"""

import contextlib
import io
import json
import unittest

from pyfakefs import fake_filesystem_unittest

from mlcf.harness.cli import main
from mlcf.harness.config import PRESET_DIR


def _call(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = main(argv)
    return status, out.getvalue(), err.getvalue()


class TestCli(fake_filesystem_unittest.TestCase):
    """Subcommands of the command line."""

    def setUp(self):
        self.setUpPyfakefs()
        super().setUp()
        self.fs.add_real_directory(PRESET_DIR)

    def test_allocate(self):
        """The published boundary-value allocation is printed."""
        status, out, _ = _call(['allocate', '--problem', 'bvp', '--budget', '0.30'])
        self.assertEqual(status, 0)
        allocation = json.loads(out)
        self.assertEqual(allocation['level_sizes'], [70, 10, 2])
        self.assertEqual(allocation['cf_size'], 15)

    def test_allocate_too_small(self):
        """A budget below one top-level evaluation fails with a message."""
        status, _, err = _call(['allocate', '--problem', 'bvp', '--budget', '0.001'])
        self.assertEqual(status, 1)
        self.assertIn('top-level', err)

    def test_run(self):
        """A run writes the result files."""
        status, out, _ = _call(['run', '--config', 'synthetic', '--replications', '2',
                                '--seed', '4', '--out', '/results'])
        self.assertEqual(status, 0)
        self.assertTrue(self.fs.exists('/results/results.csv'))
        self.assertTrue(self.fs.exists('/results/summary.json'))
        self.assertEqual(json.loads(out)['failures'], 0)
        with open('/results/results.csv') as results:
            self.assertEqual(len(results.read().splitlines()), 1 + 2 * 4)

    def test_diagnose(self):
        """Diagnostics cover both synthetic levels."""
        status, out, _ = _call(['diagnose', '--config', 'synthetic', '--domain-size', '64'])
        self.assertEqual(status, 0)
        self.assertEqual([entry['level'] for entry in json.loads(out)['levels']], [0, 1])


if __name__ == '__main__':
    unittest.main()

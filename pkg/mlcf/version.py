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

"""Version information for mlcf.

The release number lives in ``VERSION.txt``; development checkouts get the
short git revision appended so that result files can be traced back to the
code that produced them.
"""

import os
import subprocess

ROOT_DIR = os.path.dirname(os.path.abspath(__file__))


def _git_output(cmd):
    """Run a git command in the source tree with a minimal environment."""
    env = {key: os.environ[key] for key in ('SYSTEMROOT', 'PATH')
           if key in os.environ}
    env.update({'LANGUAGE': 'C', 'LANG': 'C', 'LC_ALL': 'C'})
    proc = subprocess.Popen(cmd, stdout=subprocess.PIPE,
                            stderr=subprocess.PIPE, env=env,
                            cwd=os.path.dirname(ROOT_DIR))
    out = proc.communicate()[0]
    if proc.returncode > 0:
        raise OSError
    return out.strip().decode('ascii')


def git_version():
    """Return the current git head sha1, or ``"Unknown"``."""
    try:
        return _git_output(['git', 'rev-parse', 'HEAD'])
    except OSError:
        return "Unknown"


with open(os.path.join(ROOT_DIR, "VERSION.txt"), "r") as version_file:
    VERSION = version_file.read().strip()


def get_version_info():
    """Get the full version string."""
    if not os.path.exists(os.path.join(os.path.dirname(ROOT_DIR), '.git')):
        return VERSION
    try:
        release = _git_output(['git', 'tag', '-l', '--points-at', 'HEAD'])
    except Exception:  # pylint: disable=broad-except
        return VERSION
    if not release:
        return VERSION + '.dev0+' + git_version()[:7]
    return VERSION


__version__ = get_version_info()

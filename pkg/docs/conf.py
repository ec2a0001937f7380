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

# pylint: disable=invalid-name
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

"""
Sphinx documentation builder
"""

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

# -- Project information -----------------------------------------------------
project = 'mlcf'
copyright = '2026, mlcf developers'  # pylint: disable=redefined-builtin
author = 'mlcf developers'

with open(os.path.join(os.path.dirname(__file__), '..', 'mlcf', 'VERSION.txt')) as fd:
    # The full version, including alpha/beta/rc tags
    release = fd.read().strip()
# The short X.Y version
version = '.'.join(release.split('.')[:2])

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.napoleon',
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx_autodoc_typehints',
    'reno.sphinxext',
]
templates_path = ['_templates']

# -----------------------------------------------------------------------------
# Autosummary
# -----------------------------------------------------------------------------

autosummary_generate = True

# -----------------------------------------------------------------------------
# Autodoc
# -----------------------------------------------------------------------------

autodoc_default_options = {
    'inherited-members': None,
}

# If true, figures, tables and code-blocks are automatically numbered if they
# have a caption.
numfig = True
numfig_format = {
    'table': 'Table %s'
}

# List of patterns, relative to source directory, that match files and
# directories to ignore when looking for source files.
exclude_patterns = ['_build']

# The name of the Pygments (syntax highlighting) style to use.
pygments_style = 'colorful'

add_module_names = False

# (e.g., if this is set to ['foo.'], then foo.bar is shown under B, not F).
modindex_common_prefix = ['mlcf.']

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_last_updated_fmt = '%Y/%m/%d'

html_theme_options = {
    'display_version': True,
    'prev_next_buttons_location': 'bottom',
    'style_external_links': True,
}

autoclass_content = 'both'

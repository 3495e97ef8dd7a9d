#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# clusterx documentation build configuration file
#
# Build with "sphinx-build -b html docs docs/.build" from the repository root

import os
import sys

import guzzle_sphinx_theme

sys.path.insert(0, os.path.abspath(os.path.join('..', 'src')))

from clusterx import __version__  # noqa: E402

# -- General configuration ------------------------------------------------

needs_sphinx = '2.4'

templates_path = ['_templates']
source_suffix = '.rst'

rst_prolog = r"""
.. role:: paramtype

.. role:: monosp

.. |int| replace:: :paramtype:`integer`
.. |bool| replace:: :paramtype:`boolean`
.. |string| replace:: :paramtype:`string`
.. |numpy| replace:: :monosp:`numpy`
.. |sympy| replace:: :monosp:`sympy`
.. |networkx| replace:: :monosp:`networkx`

.. |nbsp| unicode:: 0xA0
   :trim:

"""

master_doc = 'index'

project = 'clusterx'
copyright = '2020, the clusterx developers'
author = 'the clusterx developers'

version = '.'.join(__version__.split('.')[:2])
release = __version__

language = None

exclude_patterns = ['.build']

default_role = 'any'

# -- Options for HTML output ----------------------------------------------

html_theme_path = guzzle_sphinx_theme.html_theme_path()
html_theme = 'guzzle_sphinx_theme'

extensions = []
extensions.append('guzzle_sphinx_theme')
extensions.append('sphinx.ext.mathjax')
extensions.append('sphinx.ext.autodoc')
extensions.append('sphinx.ext.todo')
todo_include_todos = True

autodoc_member_order = 'bysource'

html_theme_options = {
    "project_nav_name": "clusterx"
}

html_sidebars = {
    '**': ['logo-text.html', 'globaltoc.html', 'searchbox.html']
}

html_logo = None
html_show_sourcelink = False
htmlhelp_basename = 'clusterx_doc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'clusterx', 'clusterx Documentation', [author], 1)
]

primary_domain = 'py'
highlight_language = 'python'

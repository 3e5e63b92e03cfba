# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here. If the directory is relative to the
# documentation root, use os.path.abspath to make it absolute, like shown here.
#
import os
import sys


sys.path.insert(0, os.path.abspath('.'))
sys.path.insert(0, os.path.abspath('../'))
sys.path.insert(0, os.path.abspath('../../'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/algebra/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/bench/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/polycommit/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/proofs/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/store/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/tree/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/utils/'))
sys.path.insert(0, os.path.abspath('../../bplus_kzg_py/visualizations/'))
sys.path.insert(0, os.path.abspath('../../tests/'))
sys.path.insert(0, os.path.abspath('../../tests/proofs'))
sys.path.insert(0, os.path.abspath('../../tests/tree'))


# -- Project information -----------------------------------------------------

project = 'bplus_kzg_py'
copyright = '2026, bplus_kzg_py contributors'
author = 'bplus_kzg_py contributors'


# -- General configuration ---------------------------------------------------

# Add any Sphinx extension module names here, as strings. They can be
# extensions coming with Sphinx (named 'sphinx.ext.*') or your custom
# ones.
extensions = [
                'sphinx.ext.autodoc',
                'sphinx.ext.napoleon',
                'sphinx_copybutton',
]

# Specify which files are source files for Sphinx
source_suffix = {
    '.rst': 'restructuredtext',
}

# napoleon settings
napoleon_numpy_docstring = True

# Add any paths that contain templates here, relative to this directory.
templates_path = ['_templates']

# List of patterns, relative to source directory, that match files and
# directories to ignore when looking for source files.
# This pattern also affects html_static_path and html_extra_path.
exclude_patterns = ['_build']

# autodocs settings to include private members
autodoc_default_options = {
                            "members": True,
                            "undoc-members": True,
                            "private-members": True,
                            "inherited-members": False,
                            "show-inheritance": True,
                           }


# -- Options for HTML output -------------------------------------------------

# The theme to use for HTML and HTML Help pages.  See the documentation for
# a list of builtin themes.
#
html_theme = 'sphinx_rtd_theme'

html_static_path = []

html_theme_options = {
    "style_nav_header_background" : "#8C1515",
    "collapse_navigation" : False,
    "includehidden" : True,
    "logo_only" : False,
}

# document __init__ methods
autoclass_content = 'both'

# -*- coding: utf-8 -*-
#
# Copyright 2024 The paleobreaks authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS
# OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the
# License.
#
# Configuration file for the Sphinx documentation builder.
#
import os

from codecs import open


_ROOT_SOURCE = os.path.dirname(os.path.abspath(__file__))

# -- Project information -----------------------------------------------------

project = 'paleobreaks'
copyright = '2024, The paleobreaks authors'
author = 'The paleobreaks authors'

about = {}
with open(
        os.path.join(_ROOT_SOURCE, os.pardir, os.pardir, 'paleobreaks-core',
                     'paleobreaks_core', '__version__.py'),
        'r', 'utf-8') as f:
    exec(f.read(), about)
version = about['__version__']
release = about['__version__']

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
]

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'default'

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_show_sourcelink = False
htmlhelp_basename = 'paleobreaksdoc'

# -- Extension configuration -------------------------------------------------

autodoc_member_order = 'bysource'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'statsmodels': ('https://www.statsmodels.org/stable/', None),
}

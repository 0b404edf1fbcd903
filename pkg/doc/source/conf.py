# ------------------------------------------------------------------------------
# This file is part of frametuner.
#
# Distributed under the terms of the GNU General Public License,
# either version 3 of the License, or (at your option) any later version.
# See LICENSE.txt for more info.
#
# You should have received a copy of the GNU General Public License
# along with frametuner. If not, see <http://www.gnu.org/licenses/>.
# ------------------------------------------------------------------------------

# Sphinx configuration of the frametuner documentation.

import os
import sys

sys.path.insert(0, os.path.abspath('../..'))

import frametuner

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'frametuner'
copyright = u"""Except where otherwise noted, content on this site is
licensed under a Creative Commons Attribution 3.0 License"""

# The short X.Y version and the full version
version = '.'.join(frametuner.__version__.split('.')[:2])
release = frametuner.__version__

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'frametunerdoc'

latex_documents = [
    ('index', 'frametuner.tex', u'frametuner Documentation',
     u'frametuner developers', 'manual'),
]

man_pages = [
    ('index', 'frametuner', u'frametuner Documentation',
     [u'frametuner developers'], 1)
]

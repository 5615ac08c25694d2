# Sphinx configuration for the gaussdens documentation.
import os
import sys

here = os.path.dirname(__file__)
sys.path.insert(0, os.path.abspath(os.path.join(here, '..')))

import gaussdens     # noqa: E402


extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon']
source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build']
pygments_style = 'sphinx'

project = 'gaussdens'
copyright = '2026, the gaussdens developers'
author = 'the gaussdens developers'
version = gaussdens.__version__
release = gaussdens.__version__

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'gaussdens_doc'

man_pages = [(
    master_doc, 'gaussdens',
    'Gaussian densities along curve shortening flow', [author], 1)
]

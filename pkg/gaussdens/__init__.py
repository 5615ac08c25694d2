"""Numerical laboratory for Gaussian densities along mean curvature flow."""
from gaussdens.__version__ import __version__

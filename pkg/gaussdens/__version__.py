"""Numerical laboratory for Gaussian densities along mean curvature flow."""
__version__ = '0.1.0-dev'

"""Gaussian density functionals and their maximization."""

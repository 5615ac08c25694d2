"""Positive backward heat solutions built from Gaussian mixtures."""

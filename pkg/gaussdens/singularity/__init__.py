"""Rescaling, singularity classification and breathers."""

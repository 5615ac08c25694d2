"""Plane curve and round sphere geometry."""

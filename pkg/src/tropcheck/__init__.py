"""Exact analysis of tropical (min-plus) rational maps."""

__version__ = "0.1.0"

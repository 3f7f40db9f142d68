"""Spectral-gap laboratory for random graphs and random simplicial complexes."""

__version__ = "0.1.0"

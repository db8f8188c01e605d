"""Computations with ideals of s-Hankel hypermatrices."""

__version__ = "0.1.0"

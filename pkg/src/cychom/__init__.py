"""Exact-arithmetic Hochschild, cyclic and periodic cyclic homology."""

__version__ = "0.1.0"

"""Exact tools for Lefschetz properties, algebraic shifting and rigidity of
simplicial spheres."""

__version__ = "0.1.0"

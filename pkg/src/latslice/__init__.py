"""Exact lattice point counting for convex bodies, their sections and projections."""

__version__ = "0.1.0"

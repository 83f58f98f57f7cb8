"""Exact linear algebra for knot Floer complexes with tau / iota symmetries."""

__version__ = "0.1.0"

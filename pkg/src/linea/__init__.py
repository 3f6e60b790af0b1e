"""Exact commutative algebra for coordinate rings of line arrangements."""

__version__ = "0.1.0"

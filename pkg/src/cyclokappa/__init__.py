"""Depth-graded combinatorics of cyclotomic multiple zeta values."""

__version__ = "0.1.0"

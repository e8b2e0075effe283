"""Exact block Toeplitz matrices with entries in a commutative matrix algebra."""

__version__ = "0.1.0"

"""Exact and modular experiments with generalized central trinomial coefficients."""

__version__ = "0.1.0"

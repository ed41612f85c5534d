"""Computational engine for filtrated K-theory over finite T0-spaces."""

__version__ = "0.1.0"

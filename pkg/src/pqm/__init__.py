"""Partition lattices, logical entropy and their linearization to vector spaces."""

__version__ = "0.1.0"

"""Symbolic and ordinary powers of monomial-curve ideals, computed exactly."""

__version__ = "0.1.0"

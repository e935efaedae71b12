"""Numerical and exact verification of divisor-convolution identities
against Hecke eigenform data."""

__version__ = "0.1.0"

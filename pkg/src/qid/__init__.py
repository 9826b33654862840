"""Exact construction and verification of q-series identities."""

__version__ = "0.1.0"

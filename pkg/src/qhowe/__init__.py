"""Exact q-deformed Howe dualities and Verma tensor products."""

__version__ = "0.1.0"

"""Corings, para-Hopf algebroids and their Hopf-cyclic (co)homology, computed exactly."""

from .linalg import QQ, Field, Matrix

__version__ = "0.1.0"

__all__ = ["QQ", "Field", "Matrix", "__version__"]

"""Monotone orbifold Hurwitz numbers computed four ways, with exact cross-checks."""
__version__ = "0.1.0"

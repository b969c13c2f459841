"""Exact construction, detection and certification of Galois points of
plane algebraic curves over finite fields."""

__version__ = "0.1.0"

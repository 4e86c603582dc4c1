"""Braces and indecomposable involutive set-theoretic solutions of the Yang-Baxter equation."""

__version__ = "0.1.0"

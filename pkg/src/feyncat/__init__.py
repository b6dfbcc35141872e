"""Bialgebras and Hopf algebras built from Feynman-category data."""

__version__ = "0.1.0"

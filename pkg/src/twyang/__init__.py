"""Exact checks of identities between Yangians, twisted Yangians and reflection algebras."""

__version__ = "0.1.0"

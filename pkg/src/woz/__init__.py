"""Wizard-of-Oz dialogue collection toolkit."""

__version__ = "0.1.0"

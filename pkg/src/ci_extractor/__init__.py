"""Contextual-integrity parameter extraction from privacy-policy statements."""

__version__ = "0.1.0"

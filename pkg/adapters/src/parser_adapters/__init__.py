"""Adapters producing ci-extractor interchange files from external or builtin models."""

__version__ = "0.1.0"

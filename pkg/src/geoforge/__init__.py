"""Synthetic plane-geometry proof problems: generation and evaluation."""

__version__ = "0.1.0"

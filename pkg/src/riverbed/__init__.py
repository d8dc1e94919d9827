"""Micro-batch streaming analytics with sketch-based distinct counting
and a human-in-the-loop sentiment workflow engine."""

__version__ = "0.1.0"

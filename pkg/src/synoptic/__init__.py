"""Synoptic compiler and reference simulator."""

__version__ = "0.1.0"

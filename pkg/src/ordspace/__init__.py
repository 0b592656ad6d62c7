"""Workbench for countable linearly ordered spaces and their squares."""

__version__ = "0.1.0"

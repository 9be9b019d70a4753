"""Bandit exploration for outer-loop link adaptation."""

__version__ = "0.1.0"

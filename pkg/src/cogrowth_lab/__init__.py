"""Closed-walk counting on the virtually Heisenberg group and the arithmetic around it."""

__version__ = "0.1.0"

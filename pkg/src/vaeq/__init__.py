"""Equations in virtually abelian groups: reduction to integer linear
systems, EDT0L solution languages and weighted growth."""

__version__ = "0.1.0"

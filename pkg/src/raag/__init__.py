"""Invariants of right-angled Artin groups and of their minimal 4-manifold models."""

__version__ = "0.1.0"

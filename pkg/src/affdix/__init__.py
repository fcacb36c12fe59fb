"""Exact computations with polarisations, Dixmier modules and their
annihilators for nilpotent Lie algebras over Q_p."""

__version__ = "0.1.0"

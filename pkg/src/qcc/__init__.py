"""Quantum-controlled interaction model: propagators, estimators and detector dynamics."""

__version__ = "0.1.0"

"""Entanglement-renormalization toolkit for chiral spin liquids on finite tori."""

__version__ = "0.1.0"
